/**
 * Minimal retained scene graph shared by the SVG and PNG backends.
 *
 * Figures are built once as a list of primitives in pixel coordinates
 * (y grows downward) and then serialized by either backend, so the two
 * outputs always agree about geometry.
 */

export type Anchor = "start" | "middle" | "end";

export interface RectNode {
  kind: "rect";
  x: number;
  y: number;
  w: number;
  h: number;
  fill: string;
}

export interface LineNode {
  kind: "line";
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  stroke: string;
  width: number;
}

export interface PolylineNode {
  kind: "polyline";
  points: Array<[number, number]>;
  stroke: string;
  width: number;
}

export interface CircleNode {
  kind: "circle";
  cx: number;
  cy: number;
  r: number;
  fill: string;
}

export interface TextNode {
  kind: "text";
  x: number;
  y: number; // baseline
  text: string;
  size: number;
  fill: string;
  anchor: Anchor;
  rotate?: 270; // quarter turn counter-clockwise about (x, y)
}

export type SceneNode = RectNode | LineNode | PolylineNode | CircleNode | TextNode;

export interface Scene {
  width: number;
  height: number;
  background: string;
  nodes: SceneNode[];
}

/** Fixed-precision coordinate formatting keeps serialization stable. */
export function fmt(v: number): string {
  if (!Number.isFinite(v)) throw new Error(`non-finite coordinate: ${v}`);
  const r = Math.round(v * 100) / 100;
  // normalize -0 so identical scenes never differ in sign only
  return (Object.is(r, -0) ? 0 : r).toString();
}

export function scene(width: number, height: number, background = "#ffffff"): Scene {
  return { width, height, background, nodes: [] };
}
