export type Verdict = "ACCEPTABLE" | "UNACCEPTABLE" | "NOT_EVALUABLE";

/** Mirror of the monitoring service's status payload (1-based indices). */
export interface StatusReport {
    m: number;
    connected: boolean;
    graph_id: number | null;
    canonical_code: string | null;
    spectral_radius: number | null;
    lambda_star: number | null;
    ci: number | null;
    ri: number | null;
    cr: number | null;
    verdict: Verdict;
    suspect_triads: [number, number, number, number][];
}

export interface ThresholdRecord {
    n: number;
    m: number;
    graph_id: number | null;
    canonical_code: string | null;
    random_index: number;
    acceptance_ratio: number;
    sample_count: number;
    mode: "EXACT" | "MONTE_CARLO";
    seed: number | null;
    spectral_radius: number | null;
    ci_std: number | null;
}

export interface HistoryEntry {
    i: number;
    j: number;
    value: number | null; // null marks a deletion
}
