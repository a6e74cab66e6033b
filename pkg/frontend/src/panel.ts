import { badgeColor } from "./badge";
import { fmtStat } from "./format";
import { SessionStore } from "./state";

/** Status numbers, verdict badge, threshold provenance and suspects. */
export function renderPanel(store: SessionStore, container: HTMLElement): void {
    container.textContent = "";
    const report = store.report;

    const badge = document.createElement("div");
    badge.id = "verdict-badge";
    const verdict = report ? report.verdict : null;
    badge.className = `badge ${badgeColor(verdict)}`;
    badge.textContent = verdict ?? "NO DATA";
    container.appendChild(badge);

    if (store.lastError) {
        const toast = document.createElement("div");
        toast.className = "toast";
        toast.textContent = store.lastError;
        container.appendChild(toast);
    }
    if (!report) {
        return;
    }

    const stats = document.createElement("dl");
    stats.className = "stats";
    const rows: [string, string, string][] = [
        ["missing", "stat-m", String(report.m)],
        ["connected", "stat-connected", report.connected ? "yes" : "no"],
        ["spectral radius", "stat-sr", fmtStat(report.spectral_radius)],
        ["lambda", "stat-lambda", fmtStat(report.lambda_star)],
        ["CI", "stat-ci", fmtStat(report.ci)],
        ["RI", "stat-ri", fmtStat(report.ri)],
        ["CR", "stat-cr", fmtStat(report.cr)],
    ];
    for (const [label, id, value] of rows) {
        const dt = document.createElement("dt");
        dt.textContent = label;
        const dd = document.createElement("dd");
        dd.id = id;
        dd.textContent = value;
        stats.appendChild(dt);
        stats.appendChild(dd);
    }
    container.appendChild(stats);

    container.appendChild(renderThresholds(store));

    if (report.suspect_triads.length > 0) {
        const heading = document.createElement("h3");
        heading.textContent = "suspect triangles";
        container.appendChild(heading);
        const list = document.createElement("ol");
        list.id = "suspect-triads";
        for (const [i, j, k, err] of report.suspect_triads) {
            const item = document.createElement("li");
            item.textContent = `(${i}, ${j}, ${k}) error ${fmtStat(err)}`;
            list.appendChild(item);
        }
        container.appendChild(list);
    }
}

function renderThresholds(store: SessionStore): HTMLElement {
    const panel = document.createElement("div");
    panel.id = "threshold-panel";
    const report = store.report;
    const heading = document.createElement("h3");
    heading.textContent = "thresholds";
    panel.appendChild(heading);
    if (!report || report.verdict === "NOT_EVALUABLE" || report.ci === null || report.ri === null) {
        const note = document.createElement("p");
        note.textContent = "threshold undefined";
        panel.appendChild(note);
        return panel;
    }
    const rows = document.createElement("dl");
    rows.className = "stats";
    const addRow = (label: string, id: string, ri: number | null) => {
        const dt = document.createElement("dt");
        dt.textContent = label;
        const dd = document.createElement("dd");
        dd.id = id;
        if (ri === null) {
            dd.textContent = "unavailable";
        } else {
            const implies = report.ci! <= 0.1 * ri ? "accept" : "reject";
            dd.textContent = `${fmtStat(ri)} → ${implies}`;
        }
        rows.appendChild(dt);
        rows.appendChild(dd);
    };
    addRow("graph-specific RI", "threshold-graph", report.ri);
    addRow("position-agnostic RI", "threshold-pooled", store.pooled ? store.pooled.random_index : null);
    panel.appendChild(rows);
    return panel;
}
