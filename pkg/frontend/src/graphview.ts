import { SessionStore } from "./state";

const SVG_NS = "http://www.w3.org/2000/svg";

/** Circle-layout view: known comparisons solid, missing ones dashed. */
export function renderGraph(store: SessionStore, container: HTMLElement): void {
    container.textContent = "";
    const size = 220;
    const radius = 80;
    const cx = size / 2;
    const cy = size / 2;
    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("viewBox", `0 0 ${size} ${size}`);
    svg.setAttribute("class", "graph-view");

    const position = (v: number) => {
        const angle = (2 * Math.PI * (v - 1)) / store.n - Math.PI / 2;
        return [cx + radius * Math.cos(angle), cy + radius * Math.sin(angle)];
    };

    const known = new Set(store.knownPairs().map(([i, j]) => `${i},${j}`));
    for (let i = 1; i <= store.n; i++) {
        for (let j = i + 1; j <= store.n; j++) {
            const [x1, y1] = position(i);
            const [x2, y2] = position(j);
            const line = document.createElementNS(SVG_NS, "line");
            line.setAttribute("x1", String(x1));
            line.setAttribute("y1", String(y1));
            line.setAttribute("x2", String(x2));
            line.setAttribute("y2", String(y2));
            const isKnown = known.has(`${i},${j}`);
            line.setAttribute("class", isKnown ? "edge-known" : "edge-missing");
            if (!isKnown) {
                line.setAttribute("stroke-dasharray", "4 3");
            }
            svg.appendChild(line);
        }
    }
    for (let v = 1; v <= store.n; v++) {
        const [x, y] = position(v);
        const circle = document.createElementNS(SVG_NS, "circle");
        circle.setAttribute("cx", String(x));
        circle.setAttribute("cy", String(y));
        circle.setAttribute("r", "12");
        circle.setAttribute("class", "vertex");
        svg.appendChild(circle);
        const label = document.createElementNS(SVG_NS, "text");
        label.setAttribute("x", String(x));
        label.setAttribute("y", String(y + 4));
        label.setAttribute("text-anchor", "middle");
        label.setAttribute("class", "vertex-label");
        label.textContent = String(v);
        svg.appendChild(label);
    }
    container.appendChild(svg);
}
