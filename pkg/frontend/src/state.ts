// View state and its reducer. Transitions are pure functions of
// (state, event): replaying an event log reproduces the same final state.
// All numbers shown to the user come from service responses; the reducer
// never derives a metric or a distance itself.

import type { LayoutDoc, Match, Series } from "./types.js";

export type ViewName = "ego" | "path" | "citation" | "genealogy" | "metrics" | "communities";
export type SeriesMode = "annual" | "cumulative";

export interface Point {
  readonly x: number;
  readonly y: number;
}

export interface PathView {
  readonly from: string;
  readonly to: string;
  readonly distance: number | null;
  readonly paths: readonly (readonly string[])[];
  readonly labels: Readonly<Record<string, string>>;
}

export interface IndexCard {
  readonly h: number;
  readonly g: number;
  readonly i10: number;
}

export interface Transform {
  readonly x: number;
  readonly y: number;
  readonly k: number;
}

export interface ViewState {
  readonly view: ViewName;
  readonly selected: readonly string[];
  readonly query: string;
  readonly matches: readonly Match[];
  readonly layout: LayoutDoc | null;
  readonly labels: Readonly<Record<string, string>>;
  readonly pins: Readonly<Record<string, Point>>;
  readonly seriesMode: SeriesMode;
  readonly series: Series | null;
  readonly indices: IndexCard | null;
  readonly path: PathView | null;
  readonly transform: Transform;
  readonly version: number;
  readonly notice: string | null;
}

export type AppEvent =
  | { kind: "set-view"; view: ViewName }
  | { kind: "search-input"; query: string }
  | { kind: "search-results"; version: number; query: string; matches: Match[] }
  | { kind: "select-author"; id: string }
  | { kind: "clear-selection" }
  | { kind: "layout-arrived"; version: number; layout: LayoutDoc; labels: Record<string, string> }
  | {
      kind: "path-arrived";
      version: number;
      from: string;
      to: string;
      distance: number | null;
      paths: string[][];
      labels: Record<string, string>;
    }
  | { kind: "metrics-arrived"; version: number; indices: IndexCard; series: Series }
  | { kind: "drag"; id: string; x: number; y: number }
  | { kind: "drag-end" }
  | { kind: "reset-pins" }
  | { kind: "toggle-series-mode" }
  | { kind: "pan-zoom"; x: number; y: number; k: number }
  | { kind: "service-error"; message: string }
  | { kind: "dismiss-notice" };

export function initialState(): ViewState {
  return {
    view: "ego",
    selected: [],
    query: "",
    matches: [],
    layout: null,
    labels: {},
    pins: {},
    // First load shows running totals; one toggle flips to per-year values.
    seriesMode: "cumulative",
    series: null,
    indices: null,
    path: null,
    transform: { x: 0, y: 0, k: 1 },
    version: 0,
    notice: null,
  };
}

function stale(state: ViewState, version: number): boolean {
  return version < state.version;
}

function withVersion(state: ViewState, version: number): ViewState {
  return version > state.version ? { ...state, version } : state;
}

export function reduce(state: ViewState, event: AppEvent): ViewState {
  switch (event.kind) {
    case "set-view": {
      // The path view compares exactly two people; refuse to enter it bare.
      if (event.view === "path" && state.selected.length !== 2) {
        return { ...state, notice: "select exactly two authors for the path view" };
      }
      return { ...state, view: event.view, notice: null };
    }

    case "search-input": {
      if (!event.query) {
        return { ...state, query: "", matches: [] };
      }
      return { ...state, query: event.query };
    }

    case "search-results": {
      if (stale(state, event.version)) return state;
      // Results for a query the user has already typed past are dropped.
      if (event.query !== state.query) return withVersion(state, event.version);
      return { ...withVersion(state, event.version), matches: event.matches };
    }

    case "select-author": {
      const kept = state.selected.filter((id) => id !== event.id);
      const selected = [...kept, event.id].slice(-2);
      return { ...state, selected, notice: null };
    }

    case "clear-selection":
      return { ...state, selected: [] };

    case "layout-arrived": {
      if (stale(state, event.version)) return state;
      // Pins only make sense for nodes in the current picture.
      const present = new Set(event.layout.nodes.map((node) => node.id));
      const pins: Record<string, Point> = {};
      for (const [id, point] of Object.entries(state.pins)) {
        if (present.has(id)) pins[id] = point;
      }
      return {
        ...withVersion(state, event.version),
        layout: event.layout,
        labels: event.labels,
        pins,
        notice: null,
      };
    }

    case "path-arrived": {
      if (stale(state, event.version)) return state;
      return {
        ...withVersion(state, event.version),
        path: {
          from: event.from,
          to: event.to,
          distance: event.distance,
          paths: event.paths,
          labels: event.labels,
        },
        notice: null,
      };
    }

    case "metrics-arrived": {
      if (stale(state, event.version)) return state;
      return {
        ...withVersion(state, event.version),
        indices: event.indices,
        series: event.series,
        notice: null,
      };
    }

    case "drag": {
      if (!state.layout || !state.layout.nodes.some((node) => node.id === event.id)) {
        return state;
      }
      return { ...state, pins: { ...state.pins, [event.id]: { x: event.x, y: event.y } } };
    }

    case "drag-end":
      // The pin stays where it was released; the host schedules a re-solve.
      return state;

    case "reset-pins":
      return { ...state, pins: {} };

    case "toggle-series-mode":
      return { ...state, seriesMode: state.seriesMode === "cumulative" ? "annual" : "cumulative" };

    case "pan-zoom":
      return { ...state, transform: { x: event.x, y: event.y, k: event.k } };

    case "service-error":
      // Non-blocking notice; the prior view stays on screen.
      return { ...state, notice: event.message };

    case "dismiss-notice":
      return { ...state, notice: null };
  }
}

export function replay(events: readonly AppEvent[], from?: ViewState): ViewState {
  return events.reduce(reduce, from ?? initialState());
}
