// SVG string rendering. Pure: same model in, same markup out. Display
// geometry (spacing, bar scaling) is chosen here, but every number printed
// comes from a service response untouched.

import { boundingBox, positioned, type RenderModel } from "./geometry.js";
import { colorOf } from "./palette.js";
import type { PathView, Point, Transform } from "./state.js";
import type { LayoutDoc, Series } from "./types.js";

export function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

const IDENTITY: Transform = { x: 0, y: 0, k: 1 };

export function renderGraphSvg(
  layout: LayoutDoc,
  pins: Readonly<Record<string, Point>>,
  labels: Readonly<Record<string, string>>,
  transform: Transform = IDENTITY,
): string {
  const model = positioned(layout, pins);
  const box = boundingBox(model);
  const parts: string[] = [];
  parts.push(
    `<svg class="graph" data-idiom="${escapeXml(layout.idiom)}" ` +
      `viewBox="${box.minX} ${box.minY} ${box.width} ${box.height}" ` +
      `xmlns="http://www.w3.org/2000/svg">`,
  );
  parts.push(`<g transform="translate(${transform.x},${transform.y}) scale(${transform.k})">`);
  for (const edge of model.edges) {
    const width = Math.min(1 + Math.log2(edge.w + 1), 6);
    parts.push(
      `<line class="edge" data-a="${escapeXml(edge.a)}" data-b="${escapeXml(edge.b)}" ` +
        `x1="${edge.x1}" y1="${edge.y1}" x2="${edge.x2}" y2="${edge.y2}" ` +
        `stroke-width="${width}"><title>${escapeXml(`${edge.a} - ${edge.b}: ${edge.w}`)}</title></line>`,
    );
  }
  for (const node of model.nodes) {
    const label = labels[node.id] ?? node.id;
    parts.push(
      `<g class="node" data-id="${escapeXml(node.id)}">` +
        `<circle cx="${node.x}" cy="${node.y}" r="${node.r}" fill="${colorOf(node.color)}">` +
        `<title>${escapeXml(label)}</title></circle>` +
        `<text x="${node.x}" y="${node.y - node.r - 4}" text-anchor="middle">` +
        `${escapeXml(label)}</text></g>`,
    );
  }
  parts.push("</g></svg>");
  return parts.join("");
}

const HOP_SPACING = 150;
const ROW_SPACING = 90;

export function renderPathSvg(path: PathView): string {
  const caption =
    path.distance === null ? "no connection" : `distance ${path.distance}`;
  const rows = path.paths.length;
  const columns = Math.max(2, ...path.paths.map((p) => p.length));
  const width = (columns - 1) * HOP_SPACING + 160;
  const height = Math.max(1, rows) * ROW_SPACING + 60;
  const parts: string[] = [];
  parts.push(
    `<svg class="paths" viewBox="0 0 ${width} ${height}" xmlns="http://www.w3.org/2000/svg">`,
  );
  parts.push(
    `<text class="caption" x="${width / 2}" y="24" text-anchor="middle">` +
      `${escapeXml(`${path.from} to ${path.to}: ${caption}`)}</text>`,
  );
  path.paths.forEach((hops, row) => {
    // Row 0 is the selected shortest path; later rows are de-emphasised.
    const cls = row === 0 ? "main" : "alt";
    const y = 60 + row * ROW_SPACING;
    for (let i = 0; i + 1 < hops.length; i += 1) {
      parts.push(
        `<line class="hop ${cls}" x1="${80 + i * HOP_SPACING}" y1="${y}" ` +
          `x2="${80 + (i + 1) * HOP_SPACING}" y2="${y}"/>`,
      );
    }
    hops.forEach((id, i) => {
      const label = path.labels[id] ?? id;
      parts.push(
        `<g class="stop ${cls}" data-id="${escapeXml(id)}">` +
          `<circle cx="${80 + i * HOP_SPACING}" cy="${y}" r="10"/>` +
          `<text x="${80 + i * HOP_SPACING}" y="${y - 18}" text-anchor="middle">` +
          `${escapeXml(label)}</text></g>`,
      );
    });
  });
  parts.push("</svg>");
  return parts.join("");
}

const CHART_WIDTH = 640;
const CHART_HEIGHT = 220;
const AXIS = 30;

export function renderSeriesSvg(series: Series): string {
  const n = series.years.length;
  const peak = Math.max(1, ...series.papers, ...series.citations);
  const slot = n > 0 ? (CHART_WIDTH - AXIS) / n : 0;
  const bar = Math.max(2, slot * 0.35);
  const scale = (CHART_HEIGHT - 2 * AXIS) / peak;
  const baseline = CHART_HEIGHT - AXIS;
  const parts: string[] = [];
  parts.push(
    `<svg class="series" data-mode="${series.mode}" ` +
      `viewBox="0 0 ${CHART_WIDTH} ${CHART_HEIGHT}" xmlns="http://www.w3.org/2000/svg">`,
  );
  parts.push(
    `<text class="caption" x="${CHART_WIDTH / 2}" y="16" text-anchor="middle">` +
      `${escapeXml(`${series.mode} papers and citations`)}</text>`,
  );
  for (let i = 0; i < n; i += 1) {
    const year = series.years[i] as number;
    const papers = series.papers[i] as number;
    const citations = series.citations[i] as number;
    const x = AXIS + i * slot;
    parts.push(
      `<rect class="bar paper" data-year="${year}" data-value="${papers}" ` +
        `x="${x}" y="${baseline - papers * scale}" width="${bar}" height="${papers * scale}"/>`,
    );
    parts.push(
      `<rect class="bar cite" data-year="${year}" data-value="${citations}" ` +
        `x="${x + bar}" y="${baseline - citations * scale}" width="${bar}" ` +
        `height="${citations * scale}"/>`,
    );
    if (n <= 16 || i % Math.ceil(n / 16) === 0) {
      parts.push(
        `<text class="tick" x="${x + bar}" y="${baseline + 16}" text-anchor="middle">` +
          `${year}</text>`,
      );
    }
  }
  if (series.undated_records > 0 || series.undated_citations > 0) {
    parts.push(
      `<text class="undated" x="${CHART_WIDTH - 8}" y="16" text-anchor="end">` +
        `${escapeXml(
          `undated: ${series.undated_records} records, ${series.undated_citations} citations`,
        )}</text>`,
    );
  }
  parts.push("</svg>");
  return parts.join("");
}

export type { RenderModel };
