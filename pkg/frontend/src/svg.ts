/** Scene to SVG string. Output is fully determined by the scene. */

import { Scene, SceneNode, fmt } from "./scene.js";

const FONT = "Helvetica, Arial, sans-serif";

function esc(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function node(n: SceneNode): string {
  switch (n.kind) {
    case "rect":
      return `<rect x="${fmt(n.x)}" y="${fmt(n.y)}" width="${fmt(n.w)}" height="${fmt(n.h)}" fill="${n.fill}"/>`;
    case "line":
      return `<line x1="${fmt(n.x1)}" y1="${fmt(n.y1)}" x2="${fmt(n.x2)}" y2="${fmt(n.y2)}" stroke="${n.stroke}" stroke-width="${fmt(n.width)}"/>`;
    case "polyline": {
      const pts = n.points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
      return `<polyline points="${pts}" fill="none" stroke="${n.stroke}" stroke-width="${fmt(n.width)}"/>`;
    }
    case "circle":
      return `<circle cx="${fmt(n.cx)}" cy="${fmt(n.cy)}" r="${fmt(n.r)}" fill="${n.fill}"/>`;
    case "text": {
      const rot = n.rotate ? ` transform="rotate(${n.rotate} ${fmt(n.x)} ${fmt(n.y)})"` : "";
      return (
        `<text x="${fmt(n.x)}" y="${fmt(n.y)}" font-family="${FONT}" font-size="${fmt(n.size)}"` +
        ` text-anchor="${n.anchor}" fill="${n.fill}"${rot}>${esc(n.text)}</text>`
      );
    }
  }
}

export function toSvg(s: Scene): string {
  const lines = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${s.width}" height="${s.height}" viewBox="0 0 ${s.width} ${s.height}">`,
    `<rect x="0" y="0" width="${s.width}" height="${s.height}" fill="${s.background}"/>`,
  ];
  for (const n of s.nodes) lines.push(node(n));
  lines.push("</svg>");
  return lines.join("\n") + "\n";
}
