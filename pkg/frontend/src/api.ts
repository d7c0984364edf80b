// Thin client over the query service's HTTP endpoints. The explorer does
// all its computation server-side; this module only builds URLs and decodes
// JSON. An injectable fetch keeps it testable without a network.

import type { Point } from "./state.js";
import type {
  AuthorResponse,
  CitersResponse,
  CommunitiesResponse,
  DistanceResponse,
  EgoResponse,
  ErrorBody,
  ForceResponse,
  GenealogyResponse,
  MetricsResponse,
  PathsResponse,
  SearchResponse,
  UploadResponse,
} from "./types.js";

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ServiceError";
  }
}

export interface HttpResponse {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}

export type FetchLike = (
  url: string,
  init?: { method?: string; body?: string | Uint8Array },
) => Promise<HttpResponse>;

export interface ForceOptions {
  seed?: number;
  iterations?: number;
  pins?: Readonly<Record<string, Point>>;
}

export interface Client {
  search(query: string): Promise<SearchResponse>;
  author(id: string): Promise<AuthorResponse>;
  metrics(id: string, mode: "annual" | "cumulative"): Promise<MetricsResponse>;
  distance(root: string): Promise<DistanceResponse>;
  paths(from: string, to: string, opts?: { max?: number; slack?: number }): Promise<PathsResponse>;
  ego(author: string, k?: number): Promise<EgoResponse>;
  citers(author: string): Promise<CitersResponse>;
  genealogy(root: string, threshold?: number): Promise<GenealogyResponse>;
  communities(seed?: number): Promise<CommunitiesResponse>;
  force(opts?: ForceOptions): Promise<ForceResponse>;
  uploadCorpus(data: Uint8Array | string): Promise<UploadResponse>;
}

// Pins travel as a JSON object of [x, y] pairs in the `pins` query parameter.
export function pinParam(pins: Readonly<Record<string, Point>>): string {
  const wire: Record<string, [number, number]> = {};
  for (const [id, point] of Object.entries(pins)) {
    wire[id] = [point.x, point.y];
  }
  return JSON.stringify(wire);
}

export function makeClient(base: string, fetchImpl?: FetchLike): Client {
  const doFetch: FetchLike =
    fetchImpl ?? ((url, init) => fetch(url, init as RequestInit | undefined));
  const root = base.replace(/\/+$/, "");

  async function decode<T>(response: HttpResponse): Promise<T> {
    let body: unknown;
    try {
      body = await response.json();
    } catch {
      throw new ServiceError(response.status, "bad_response", "service sent unreadable JSON");
    }
    if (!response.ok) {
      const err = body as Partial<ErrorBody>;
      throw new ServiceError(
        response.status,
        err.code ?? "error",
        err.message ?? `service error ${response.status}`,
      );
    }
    return body as T;
  }

  async function get<T>(path: string, params?: Record<string, string>): Promise<T> {
    const search = params ? `?${new URLSearchParams(params)}` : "";
    return decode<T>(await doFetch(`${root}${path}${search}`));
  }

  return {
    async search(query: string): Promise<SearchResponse> {
      if (!query) {
        // An empty query never leaves the client.
        return { version: 0, query: "", matches: [] };
      }
      return get("/authors", { q: query });
    },

    author(id: string): Promise<AuthorResponse> {
      return get(`/authors/${encodeURIComponent(id)}`);
    },

    metrics(id: string, mode: "annual" | "cumulative"): Promise<MetricsResponse> {
      return get(`/authors/${encodeURIComponent(id)}/metrics`, { mode });
    },

    distance(root_: string): Promise<DistanceResponse> {
      return get("/distance", { root: root_ });
    },

    paths(from: string, to: string, opts?: { max?: number; slack?: number }): Promise<PathsResponse> {
      const params: Record<string, string> = { from, to };
      if (opts?.max !== undefined) params.max = String(opts.max);
      if (opts?.slack !== undefined) params.slack = String(opts.slack);
      return get("/paths", params);
    },

    ego(author: string, k?: number): Promise<EgoResponse> {
      const params: Record<string, string> = { author };
      if (k !== undefined) params.k = String(k);
      return get("/ego", params);
    },

    citers(author: string): Promise<CitersResponse> {
      return get("/citers", { author });
    },

    genealogy(root_: string, threshold?: number): Promise<GenealogyResponse> {
      const params: Record<string, string> = { root: root_ };
      if (threshold !== undefined) params.threshold = String(threshold);
      return get("/genealogy", params);
    },

    communities(seed?: number): Promise<CommunitiesResponse> {
      return get("/communities", seed !== undefined ? { seed: String(seed) } : undefined);
    },

    force(opts?: ForceOptions): Promise<ForceResponse> {
      const params: Record<string, string> = {};
      if (opts?.seed !== undefined) params.seed = String(opts.seed);
      if (opts?.iterations !== undefined) params.iterations = String(opts.iterations);
      if (opts?.pins && Object.keys(opts.pins).length > 0) {
        params.pins = pinParam(opts.pins);
      }
      return get("/layout/force", Object.keys(params).length > 0 ? params : undefined);
    },

    async uploadCorpus(data: Uint8Array | string): Promise<UploadResponse> {
      return decode(await doFetch(`${root}/corpus`, { method: "POST", body: data }));
    },
  };
}
