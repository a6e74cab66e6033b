import { ApiClient } from "./api";
import { renderGraph } from "./graphview";
import { renderGrid } from "./grid";
import { renderPanel } from "./panel";
import { SessionStore } from "./state";

/** Build the whole UI for a fresh session inside ``root``. */
export async function initApp(root: HTMLElement, api: ApiClient, n: number): Promise<SessionStore> {
    const store = await SessionStore.create(api, n);
    root.textContent = "";

    const layout = document.createElement("div");
    layout.className = "layout";
    const left = document.createElement("div");
    left.className = "column";
    const right = document.createElement("div");
    right.className = "column";
    layout.appendChild(left);
    layout.appendChild(right);

    const gridBox = document.createElement("div");
    gridBox.id = "grid-box";
    const expertToggle = document.createElement("label");
    expertToggle.className = "expert-toggle";
    const checkbox = document.createElement("input");
    checkbox.type = "checkbox";
    checkbox.id = "expert-mode";
    checkbox.addEventListener("change", () => {
        store.expertMode = checkbox.checked;
        render();
    });
    expertToggle.appendChild(checkbox);
    expertToggle.appendChild(document.createTextNode(" expert free entry"));
    const graphBox = document.createElement("div");
    graphBox.id = "graph-box";
    const historyBox = document.createElement("div");
    historyBox.id = "history-box";
    left.appendChild(gridBox);
    left.appendChild(expertToggle);
    left.appendChild(graphBox);
    left.appendChild(historyBox);

    const panelBox = document.createElement("div");
    panelBox.id = "panel-box";
    right.appendChild(panelBox);
    root.appendChild(layout);

    const render = () => {
        renderGrid(store, gridBox);
        renderGraph(store, graphBox);
        renderPanel(store, panelBox);
        renderHistory(store, historyBox);
    };
    store.subscribe(render);
    render();
    return store;
}

function renderHistory(store: SessionStore, container: HTMLElement): void {
    container.textContent = "";
    if (store.history.length === 0) {
        return;
    }
    const heading = document.createElement("h3");
    heading.textContent = "history";
    container.appendChild(heading);
    const list = document.createElement("ol");
    list.id = "history-list";
    for (const entry of store.history) {
        const item = document.createElement("li");
        item.textContent = entry.value === null
            ? `cleared (${entry.i}, ${entry.j})`
            : `set (${entry.i}, ${entry.j}) = ${entry.value}`;
        list.appendChild(item);
    }
    container.appendChild(list);
}

/** Entry point for the static page: size prompt plus session bootstrap. */
export function bootstrap(): void {
    const root = document.getElementById("app");
    if (!root) {
        return;
    }
    const api = new ApiClient(
        (window as unknown as { PCMRI_API?: string }).PCMRI_API ?? "http://127.0.0.1:8000",
    );
    const form = document.createElement("form");
    form.id = "create-session";
    const label = document.createElement("label");
    label.textContent = "alternatives: ";
    const input = document.createElement("input");
    input.type = "number";
    input.min = "2";
    input.max = "9";
    input.value = "4";
    label.appendChild(input);
    const button = document.createElement("button");
    button.type = "submit";
    button.textContent = "start session";
    form.appendChild(label);
    form.appendChild(button);
    form.addEventListener("submit", (event) => {
        event.preventDefault();
        void initApp(root, api, Number(input.value));
    });
    root.appendChild(form);
}

if (typeof document !== "undefined" && document.getElementById("app")) {
    bootstrap();
}
