import { ApiClient } from "./api";
import { HistoryEntry, StatusReport, ThresholdRecord } from "./types";

type PendingOp =
    | { kind: "put"; i: number; j: number; value: number }
    | { kind: "delete"; i: number; j: number };

export function cellKey(i: number, j: number): string {
    return `${i},${j}`;
}

/**
 * Client-side session state.
 *
 * Commits queue and run one at a time so entries reach the service in the
 * order they were made.  The cell map only reflects acknowledged state:
 * a failed commit therefore reverts visually on the next render.  Every
 * number shown anywhere comes from the last service response.
 */
export class SessionStore {
    readonly n: number;
    readonly sessionId: string;

    report: StatusReport | null = null;
    pooled: ThresholdRecord | null = null;
    history: HistoryEntry[] = [];
    lastError: string | null = null;
    expertMode = false;

    private readonly api: ApiClient;
    private readonly cells = new Map<string, number>();
    private readonly pooledCache = new Map<number, ThresholdRecord>();
    private queue: PendingOp[] = [];
    private inFlight = false;
    private listeners: (() => void)[] = [];
    private idleWaiters: (() => void)[] = [];

    private constructor(api: ApiClient, n: number, sessionId: string) {
        this.api = api;
        this.n = n;
        this.sessionId = sessionId;
    }

    static async create(api: ApiClient, n: number): Promise<SessionStore> {
        const sessionId = await api.createSession(n);
        return new SessionStore(api, n, sessionId);
    }

    subscribe(listener: () => void): void {
        this.listeners.push(listener);
    }

    value(i: number, j: number): number | null {
        return this.cells.get(cellKey(i, j)) ?? null;
    }

    knownPairs(): [number, number][] {
        return [...this.cells.keys()].map((key) => {
            const [i, j] = key.split(",").map(Number);
            return [i, j] as [number, number];
        });
    }

    commit(i: number, j: number, value: number): void {
        this.queue.push({ kind: "put", i, j, value });
        void this.pump();
    }

    remove(i: number, j: number): void {
        this.queue.push({ kind: "delete", i, j });
        void this.pump();
    }

    /** Resolves once the commit queue has fully drained. */
    whenIdle(): Promise<void> {
        if (!this.inFlight && this.queue.length === 0) {
            return Promise.resolve();
        }
        return new Promise((resolve) => this.idleWaiters.push(resolve));
    }

    private async pump(): Promise<void> {
        if (this.inFlight) {
            return;
        }
        const op = this.queue.shift();
        if (op === undefined) {
            this.idleWaiters.splice(0).forEach((resolve) => resolve());
            return;
        }
        this.inFlight = true;
        try {
            let report: StatusReport;
            if (op.kind === "put") {
                report = await this.api.putComparison(this.sessionId, op.i, op.j, op.value);
                this.cells.set(cellKey(op.i, op.j), op.value);
                this.history.push({ i: op.i, j: op.j, value: op.value });
            } else {
                report = await this.api.deleteComparison(this.sessionId, op.i, op.j);
                this.cells.delete(cellKey(op.i, op.j));
                this.history.push({ i: op.i, j: op.j, value: null });
            }
            this.report = report;
            this.lastError = null;
            await this.refreshPooled(report);
        } catch (err) {
            this.lastError = err instanceof Error ? err.message : String(err);
        } finally {
            this.inFlight = false;
            this.emit();
            void this.pump();
        }
    }

    private async refreshPooled(report: StatusReport): Promise<void> {
        if (report.verdict === "NOT_EVALUABLE") {
            this.pooled = null;
            return;
        }
        const cached = this.pooledCache.get(report.m);
        if (cached) {
            this.pooled = cached;
            return;
        }
        try {
            const record = await this.api.getThreshold(this.n, report.m);
            this.pooledCache.set(report.m, record);
            this.pooled = record;
        } catch {
            this.pooled = null; // panel degrades gracefully
        }
    }

    private emit(): void {
        this.listeners.forEach((listener) => listener());
    }
}
