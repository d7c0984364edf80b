// Turns a server layout plus local pins into drawable geometry. Pins
// override server coordinates; every incident edge follows its endpoint.

import type { Point } from "./state.js";
import type { LayoutDoc } from "./types.js";

export interface PlacedNode {
  id: string;
  x: number;
  y: number;
  r: number;
  color: number;
}

export interface Segment {
  a: string;
  b: string;
  w: number;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
}

export interface RenderModel {
  nodes: PlacedNode[];
  edges: Segment[];
}

export function positioned(layout: LayoutDoc, pins: Readonly<Record<string, Point>>): RenderModel {
  const nodes: PlacedNode[] = layout.nodes.map((node) => {
    const pin = pins[node.id];
    return {
      id: node.id,
      x: pin ? pin.x : node.x,
      y: pin ? pin.y : node.y,
      r: node.r,
      color: node.color,
    };
  });
  const at = new Map(nodes.map((node) => [node.id, node]));
  const edges: Segment[] = layout.edges.map((edge) => {
    const a = at.get(edge.a);
    const b = at.get(edge.b);
    if (!a || !b) {
      throw new Error(`edge endpoint missing from layout: ${edge.a}-${edge.b}`);
    }
    return { a: edge.a, b: edge.b, w: edge.w, x1: a.x, y1: a.y, x2: b.x, y2: b.y };
  });
  return { nodes, edges };
}

export interface Box {
  minX: number;
  minY: number;
  width: number;
  height: number;
}

export function boundingBox(model: RenderModel, pad = 40): Box {
  if (model.nodes.length === 0) {
    return { minX: -pad, minY: -pad, width: 2 * pad, height: 2 * pad };
  }
  let minX = Infinity;
  let minY = Infinity;
  let maxX = -Infinity;
  let maxY = -Infinity;
  for (const node of model.nodes) {
    minX = Math.min(minX, node.x - node.r);
    minY = Math.min(minY, node.y - node.r);
    maxX = Math.max(maxX, node.x + node.r);
    maxY = Math.max(maxY, node.y + node.r);
  }
  return {
    minX: minX - pad,
    minY: minY - pad,
    width: maxX - minX + 2 * pad,
    height: maxY - minY + 2 * pad,
  };
}
