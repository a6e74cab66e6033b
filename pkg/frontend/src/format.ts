/** The 17 judgment values offered by the picker, ascending. */
export const SCALE_LABELS = [
    "1/9", "1/8", "1/7", "1/6", "1/5", "1/4", "1/3", "1/2",
    "1", "2", "3", "4", "5", "6", "7", "8", "9",
];

export function labelToValue(label: string): number {
    if (label.includes("/")) {
        const [num, den] = label.split("/");
        return Number(num) / Number(den);
    }
    return Number(label);
}

/** Render a comparison value, preferring exact scale labels. */
export function valueLabel(value: number): string {
    for (const label of SCALE_LABELS) {
        if (Math.abs(labelToValue(label) - value) <= 1e-12 * Math.max(1, value)) {
            return label;
        }
    }
    return trimNumber(value);
}

/** The mirror cell shows the exact reciprocal of what was entered. */
export function reciprocalLabel(value: number): string {
    for (const label of SCALE_LABELS) {
        if (Math.abs(labelToValue(label) - value) <= 1e-12 * Math.max(1, value)) {
            return label.includes("/") ? label.split("/")[1] : label === "1" ? "1" : `1/${label}`;
        }
    }
    return `1/${trimNumber(value)}`;
}

function trimNumber(value: number): string {
    return String(Number(value.toPrecision(10)));
}

/** Display precision for every statistic shown in the UI. */
export function fmtStat(value: number | null): string {
    return value === null ? "—" : value.toFixed(4);
}
