import { Verdict } from "./types";

export type BadgeColor = "green" | "red" | "grey";

/** Badge color is a pure function of the service verdict. */
export function badgeColor(verdict: Verdict | null): BadgeColor {
    switch (verdict) {
        case "ACCEPTABLE":
            return "green";
        case "UNACCEPTABLE":
            return "red";
        default:
            return "grey";
    }
}
