// Browser entry point: a single-threaded event loop around the pure
// reducer. DOM handlers dispatch events; side effects fetch from the
// service and feed responses back as events. Responses tagged with an
// older corpus version than the one on screen are discarded by the reducer.

import { makeClient, ServiceError } from "./api.js";
import { renderGraphSvg, renderPathSvg, renderSeriesSvg } from "./render.js";
import {
  initialState,
  reduce,
  type AppEvent,
  type ViewName,
  type ViewState,
} from "./state.js";

const VIEWS: readonly ViewName[] = ["ego", "path", "citation", "genealogy", "metrics", "communities"];
const FORCE_SEED = 0;
const FORCE_ITERATIONS = 300;

const client = makeClient(window.location.origin);
let state: ViewState = initialState();

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

function dispatch(event: AppEvent): void {
  state = reduce(state, event);
  draw();
  runEffects(event);
}

function fail(err: unknown): void {
  const message =
    err instanceof ServiceError ? err.message : err instanceof Error ? err.message : String(err);
  dispatch({ kind: "service-error", message });
}

function primary(): string | null {
  return state.selected.length > 0 ? (state.selected[state.selected.length - 1] as string) : null;
}

// ---- side effects -------------------------------------------------------

let searchTimer: number | undefined;
let resolveTimer: number | undefined;

function refreshView(): void {
  const author = primary();
  switch (state.view) {
    case "ego": {
      if (!author) return;
      client
        .ego(author)
        .then((res) =>
          dispatch({ kind: "layout-arrived", version: res.version, layout: res.layout, labels: res.labels }),
        )
        .catch(fail);
      return;
    }
    case "citation": {
      if (!author) return;
      client
        .citers(author)
        .then((res) =>
          dispatch({ kind: "layout-arrived", version: res.version, layout: res.layout, labels: res.labels }),
        )
        .catch(fail);
      return;
    }
    case "genealogy": {
      if (!author) return;
      client
        .genealogy(author)
        .then((res) =>
          dispatch({ kind: "layout-arrived", version: res.version, layout: res.layout, labels: res.labels }),
        )
        .catch(fail);
      return;
    }
    case "communities": {
      client
        .force({ seed: FORCE_SEED, iterations: FORCE_ITERATIONS, pins: state.pins })
        .then((res) =>
          dispatch({ kind: "layout-arrived", version: res.version, layout: res.layout, labels: res.labels }),
        )
        .catch(fail);
      return;
    }
    case "metrics": {
      if (!author) return;
      client
        .metrics(author, state.seriesMode)
        .then((res) =>
          dispatch({
            kind: "metrics-arrived",
            version: res.version,
            indices: { h: res.h, g: res.g, i10: res.i10 },
            series: res.series,
          }),
        )
        .catch(fail);
      return;
    }
    case "path": {
      const [from, to] = state.selected;
      if (!from || !to) return;
      client
        .paths(from, to)
        .then((res) =>
          dispatch({
            kind: "path-arrived",
            version: res.version,
            from: res.from,
            to: res.to,
            distance: res.distance,
            paths: res.paths,
            labels: res.labels,
          }),
        )
        .catch(fail);
      return;
    }
  }
}

function runEffects(event: AppEvent): void {
  switch (event.kind) {
    case "search-input": {
      window.clearTimeout(searchTimer);
      if (!event.query) return;
      searchTimer = window.setTimeout(() => {
        client
          .search(event.query)
          .then((res) =>
            dispatch({ kind: "search-results", version: res.version, query: res.query, matches: res.matches }),
          )
          .catch(fail);
      }, 150);
      return;
    }
    case "select-author":
    case "set-view":
    case "toggle-series-mode":
      refreshView();
      return;
    case "drag-end": {
      // Debounced: one re-solve per released drag, never during it.
      if (state.view !== "communities") return;
      window.clearTimeout(resolveTimer);
      resolveTimer = window.setTimeout(refreshView, 200);
      return;
    }
    case "reset-pins":
      refreshView();
      return;
    default:
      return;
  }
}

// ---- drawing ------------------------------------------------------------

function draw(): void {
  el<HTMLElement>("version").textContent = state.version > 0 ? `corpus v${state.version}` : "no corpus";
  drawNotice();
  drawMatches();
  drawTabs();
  drawSelection();
  drawStage();
}

function drawNotice(): void {
  const notice = el<HTMLElement>("notice");
  notice.textContent = state.notice ?? "";
  notice.hidden = state.notice === null;
}

function drawMatches(): void {
  const list = el<HTMLElement>("matches");
  list.replaceChildren();
  for (const match of state.matches) {
    const item = document.createElement("li");
    const button = document.createElement("button");
    button.type = "button";
    button.textContent = match.display_name;
    button.addEventListener("click", () => dispatch({ kind: "select-author", id: match.id }));
    item.appendChild(button);
    list.appendChild(item);
  }
}

function drawTabs(): void {
  for (const view of VIEWS) {
    el<HTMLButtonElement>(`tab-${view}`).classList.toggle("active", state.view === view);
  }
}

function drawSelection(): void {
  const target = el<HTMLElement>("selection");
  target.textContent =
    state.selected.length > 0
      ? state.selected.map((id) => state.labels[id] ?? id).join("  +  ")
      : "nothing selected";
}

function drawStage(): void {
  const stage = el<HTMLElement>("stage");
  if (state.view === "metrics") {
    const card = state.indices
      ? `<p class="indices">h ${state.indices.h}, g ${state.indices.g}, i10 ${state.indices.i10}</p>`
      : "";
    stage.innerHTML = card + (state.series ? renderSeriesSvg(state.series) : placeholder());
    return;
  }
  if (state.view === "path") {
    stage.innerHTML = state.path ? renderPathSvg(state.path) : placeholder();
    return;
  }
  stage.innerHTML = state.layout
    ? renderGraphSvg(state.layout, state.pins, state.labels, state.transform)
    : placeholder();
  wireDrag(stage);
}

function placeholder(): string {
  return '<p class="placeholder">search for an author to begin</p>';
}

// ---- pointer handling ---------------------------------------------------

function svgPoint(svg: SVGSVGElement, clientX: number, clientY: number): { x: number; y: number } {
  const point = svg.createSVGPoint();
  point.x = clientX;
  point.y = clientY;
  const ctm = svg.getScreenCTM();
  const mapped = ctm ? point.matrixTransform(ctm.inverse()) : point;
  // Undo the pan/zoom group so pins live in layout coordinates.
  return { x: (mapped.x - state.transform.x) / state.transform.k, y: (mapped.y - state.transform.y) / state.transform.k };
}

function wireDrag(stage: HTMLElement): void {
  const svg = stage.querySelector<SVGSVGElement>("svg.graph");
  if (!svg) return;
  let draggingId: string | null = null;

  svg.addEventListener("pointerdown", (ev) => {
    const group = (ev.target as Element).closest<SVGGElement>("g.node");
    if (!group) return;
    draggingId = group.dataset.id ?? null;
    svg.setPointerCapture(ev.pointerId);
    ev.preventDefault();
  });
  svg.addEventListener("pointermove", (ev) => {
    if (!draggingId) return;
    const where = svgPoint(svg, ev.clientX, ev.clientY);
    dispatch({ kind: "drag", id: draggingId, x: where.x, y: where.y });
  });
  const finish = () => {
    if (!draggingId) return;
    draggingId = null;
    dispatch({ kind: "drag-end" });
  };
  svg.addEventListener("pointerup", finish);
  svg.addEventListener("pointercancel", finish);

  svg.addEventListener("wheel", (ev) => {
    ev.preventDefault();
    const factor = ev.deltaY < 0 ? 1.15 : 1 / 1.15;
    const k = Math.min(8, Math.max(0.2, state.transform.k * factor));
    dispatch({ kind: "pan-zoom", x: state.transform.x, y: state.transform.y, k });
  });
}

// ---- bootstrap ----------------------------------------------------------

function bootstrap(): void {
  const search = el<HTMLInputElement>("search");
  search.addEventListener("input", () => dispatch({ kind: "search-input", query: search.value.trim() }));

  for (const view of VIEWS) {
    el<HTMLButtonElement>(`tab-${view}`).addEventListener("click", () =>
      dispatch({ kind: "set-view", view }),
    );
  }
  el<HTMLButtonElement>("toggle-mode").addEventListener("click", () =>
    dispatch({ kind: "toggle-series-mode" }),
  );
  el<HTMLButtonElement>("reset-pins").addEventListener("click", () => dispatch({ kind: "reset-pins" }));
  el<HTMLButtonElement>("clear-selection").addEventListener("click", () =>
    dispatch({ kind: "clear-selection" }),
  );

  const upload = el<HTMLInputElement>("upload");
  upload.addEventListener("change", () => {
    const file = upload.files?.[0];
    if (!file) return;
    file
      .arrayBuffer()
      .then((buf) => client.uploadCorpus(new Uint8Array(buf)))
      .then(() => refreshView())
      .catch(fail);
  });

  draw();
}

bootstrap();
