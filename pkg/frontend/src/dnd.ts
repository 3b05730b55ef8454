// HTML5 drag-to-reorder for a vertical list.  The host passes the item
// index through dataset.index and receives (from, to) on drop; state
// stays outside (confirm-then-render, no DOM-held ordering).

export function makeReorderable(
  list: HTMLElement,
  onReorder: (from: number, to: number) => void,
): void {
  let dragFrom: number | null = null;

  list.addEventListener("dragstart", (ev) => {
    const item = (ev.target as HTMLElement).closest<HTMLElement>("[data-index]");
    if (!item) return;
    dragFrom = Number(item.dataset.index);
    ev.dataTransfer?.setData("text/plain", item.dataset.index ?? "");
  });

  list.addEventListener("dragover", (ev) => {
    ev.preventDefault(); // allow drop
  });

  list.addEventListener("drop", (ev) => {
    ev.preventDefault();
    const item = (ev.target as HTMLElement).closest<HTMLElement>("[data-index]");
    if (!item || dragFrom === null) return;
    const to = Number(item.dataset.index);
    if (to !== dragFrom) onReorder(dragFrom, to);
    dragFrom = null;
  });
}
