// Wire shapes of the query service. Every response carries the corpus
// version it was computed from; the client trusts these numbers verbatim.

export interface LayoutNode {
  id: string;
  x: number;
  y: number;
  r: number;
  color: number;
}

export interface LayoutEdge {
  a: string;
  b: string;
  w: number;
}

export interface LayoutDoc {
  idiom: string;
  nodes: LayoutNode[];
  edges: LayoutEdge[];
}

export interface Match {
  id: string;
  display_name: string;
}

export interface SearchResponse {
  version: number;
  query: string;
  matches: Match[];
}

export interface AuthorCard {
  id: string;
  display_name: string;
  aliases: string[];
  institution: string | null;
  advisor_id: string | null;
  records: number;
}

export interface AuthorResponse {
  version: number;
  author: AuthorCard;
}

export interface Series {
  mode: "annual" | "cumulative";
  years: number[];
  papers: number[];
  citations: number[];
  undated_records: number;
  undated_citations: number;
}

export interface MetricsResponse {
  version: number;
  author: string;
  h: number;
  g: number;
  i10: number;
  citation_source: string;
  series: Series;
}

export interface DistanceResponse {
  version: number;
  root: string;
  distances: Record<string, number>;
}

export interface PathsResponse {
  version: number;
  from: string;
  to: string;
  distance: number | null;
  paths: string[][];
  labels: Record<string, string>;
}

export interface WeightedNeighbour {
  id: string;
  count: number;
}

export interface EgoResponse {
  version: number;
  ego: {
    center: string;
    neighbours: WeightedNeighbour[];
    edges: LayoutEdge[];
  };
  layout: LayoutDoc;
  labels: Record<string, string>;
}

export interface CitersResponse {
  version: number;
  author: string;
  citers: WeightedNeighbour[];
  layout: LayoutDoc;
  labels: Record<string, string>;
}

export interface GenealogyResponse {
  version: number;
  root: string;
  threshold: number;
  layout: LayoutDoc;
  labels: Record<string, string>;
}

export interface CommunitiesResponse {
  version: number;
  seed: number;
  converged: boolean;
  n_clusters: number;
  modularity: number | null;
  labels: Record<string, number>;
  colors: Record<string, number>;
}

export interface ForceResponse {
  version: number;
  seed: number;
  iterations: number;
  layout: LayoutDoc;
  labels: Record<string, string>;
}

export interface UploadResponse {
  version: number;
  authors: number;
  records: number;
}

export interface ErrorBody {
  version: number;
  code: string;
  message: string;
}
