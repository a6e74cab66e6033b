import { SCALE_LABELS, labelToValue, reciprocalLabel, valueLabel } from "./format";
import { SessionStore } from "./state";

/**
 * Interactive comparison grid.
 *
 * Upper-triangle cells carry a scale picker (or a free-entry field in
 * expert mode) plus a clear button; the lower triangle mirrors entered
 * values as exact reciprocals; unset pairs display a star.
 */
export function renderGrid(store: SessionStore, container: HTMLElement): void {
    container.textContent = "";
    const table = document.createElement("table");
    table.className = "grid";
    for (let i = 1; i <= store.n; i++) {
        const row = document.createElement("tr");
        for (let j = 1; j <= store.n; j++) {
            const cell = document.createElement("td");
            cell.dataset.i = String(i);
            cell.dataset.j = String(j);
            if (i === j) {
                cell.textContent = "1";
                cell.className = "diagonal";
            } else if (i < j) {
                renderEditableCell(store, cell, i, j);
            } else {
                const value = store.value(j, i);
                cell.className = "mirror";
                cell.textContent = value === null ? "⋆" : reciprocalLabel(value);
            }
            row.appendChild(cell);
        }
        table.appendChild(row);
    }
    container.appendChild(table);
}

function renderEditableCell(store: SessionStore, cell: HTMLTableCellElement, i: number, j: number): void {
    const value = store.value(i, j);
    cell.className = "editable";
    if (store.expertMode) {
        const input = document.createElement("input");
        input.type = "text";
        input.className = "cell-input";
        input.value = value === null ? "" : valueLabel(value);
        input.addEventListener("change", () => {
            const parsed = Number(input.value);
            if (Number.isFinite(parsed) && parsed > 0) {
                store.commit(i, j, parsed);
            }
        });
        cell.appendChild(input);
    } else {
        const select = document.createElement("select");
        select.className = "cell-select";
        const placeholder = document.createElement("option");
        placeholder.value = "";
        placeholder.textContent = "⋆";
        select.appendChild(placeholder);
        for (const label of SCALE_LABELS) {
            const option = document.createElement("option");
            option.value = label;
            option.textContent = label;
            select.appendChild(option);
        }
        select.value = value === null ? "" : valueLabel(value);
        select.addEventListener("change", () => {
            if (select.value !== "") {
                store.commit(i, j, labelToValue(select.value));
            }
        });
        cell.appendChild(select);
    }
    if (value !== null) {
        const clear = document.createElement("button");
        clear.className = "cell-clear";
        clear.textContent = "×";
        clear.title = "clear this comparison";
        clear.addEventListener("click", () => store.remove(i, j));
        cell.appendChild(clear);
    }
}
