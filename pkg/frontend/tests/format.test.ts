import { describe, expect, it } from "vitest";

import { SCALE_LABELS, fmtStat, labelToValue, reciprocalLabel, valueLabel } from "../src/format";

describe("scale labels", () => {
    it("covers all 17 values and round-trips", () => {
        expect(SCALE_LABELS).toHaveLength(17);
        for (const label of SCALE_LABELS) {
            expect(valueLabel(labelToValue(label))).toBe(label);
        }
    });

    it("renders reciprocals exactly", () => {
        expect(reciprocalLabel(2)).toBe("1/2");
        expect(reciprocalLabel(0.5)).toBe("2");
        expect(reciprocalLabel(1)).toBe("1");
        expect(reciprocalLabel(labelToValue("1/9"))).toBe("9");
        expect(reciprocalLabel(3.7)).toBe("1/3.7");
    });

    it("falls back to trimmed decimals off scale", () => {
        expect(valueLabel(2.5)).toBe("2.5");
    });
});

describe("fmtStat", () => {
    it("fixes four decimals and dashes nulls", () => {
        expect(fmtStat(0.10728839108637962)).toBe("0.1073");
        expect(fmtStat(null)).toBe("—");
    });
});
