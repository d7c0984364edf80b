// Mirrors the engine's 12-colour cluster palette. Colour indices arrive in
// layout nodes and community responses; the client only maps index to hex.

export const PALETTE: readonly string[] = [
  "#4e79a7",
  "#f28e2b",
  "#e15759",
  "#76b7b2",
  "#59a14f",
  "#edc948",
  "#b07aa1",
  "#ff9da7",
  "#9c755f",
  "#bab0ac",
  "#86bcb6",
  "#d37295",
];

export function colorOf(index: number): string {
  const n = PALETTE.length;
  return PALETTE[((index % n) + n) % n] as string;
}
