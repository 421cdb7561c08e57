/**
 * Scene rasterizer and PNG encoder.
 *
 * Everything is integer pixel work on an RGBA buffer: no canvas, no
 * system fonts, no anti-aliasing. That costs some polish but makes the
 * PNG bytes a pure function of the scene, which the suite relies on.
 */

import { deflateSync } from "node:zlib";

import { Scene, SceneNode, TextNode } from "./scene.js";
import { GLYPH_H, GLYPH_W, glyph } from "./font.js";

export interface Raster {
  width: number;
  height: number;
  data: Uint8Array; // RGBA rows, top to bottom
}

function parseColor(c: string): [number, number, number] {
  if (!/^#[0-9a-f]{6}$/i.test(c)) throw new Error(`unsupported color "${c}"`);
  return [
    parseInt(c.slice(1, 3), 16),
    parseInt(c.slice(3, 5), 16),
    parseInt(c.slice(5, 7), 16),
  ];
}

class Painter {
  width: number;
  height: number;
  data: Uint8Array;

  constructor(width: number, height: number) {
    this.width = width;
    this.height = height;
    this.data = new Uint8Array(width * height * 4);
  }

  set(x: number, y: number, rgb: [number, number, number]): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const i = (y * this.width + x) * 4;
    this.data[i] = rgb[0];
    this.data[i + 1] = rgb[1];
    this.data[i + 2] = rgb[2];
    this.data[i + 3] = 255;
  }

  fillRect(x0: number, y0: number, x1: number, y1: number, rgb: [number, number, number]): void {
    for (let y = Math.max(0, y0); y < Math.min(this.height, y1); y++) {
      for (let x = Math.max(0, x0); x < Math.min(this.width, x1); x++) {
        this.set(x, y, rgb);
      }
    }
  }

  /** Bresenham segment with a square brush. */
  line(x0: number, y0: number, x1: number, y1: number, t: number, rgb: [number, number, number]): void {
    const lo = -Math.floor((t - 1) / 2);
    const hi = Math.ceil((t - 1) / 2) + 1;
    const stamp = (x: number, y: number) => {
      for (let dy = lo; dy < hi; dy++) {
        for (let dx = lo; dx < hi; dx++) this.set(x + dx, y + dy, rgb);
      }
    };
    const dx = Math.abs(x1 - x0);
    const dy = -Math.abs(y1 - y0);
    const sx = x0 < x1 ? 1 : -1;
    const sy = y0 < y1 ? 1 : -1;
    let err = dx + dy;
    let [x, y] = [x0, y0];
    for (;;) {
      stamp(x, y);
      if (x === x1 && y === y1) break;
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y += sy;
      }
    }
  }

  disc(cx: number, cy: number, r: number, rgb: [number, number, number]): void {
    const rr = r * r;
    for (let y = Math.floor(cy - r); y <= Math.ceil(cy + r); y++) {
      for (let x = Math.floor(cx - r); x <= Math.ceil(cx + r); x++) {
        if ((x - cx) ** 2 + (y - cy) ** 2 <= rr) this.set(x, y, rgb);
      }
    }
  }
}

function drawText(p: Painter, n: TextNode, scale: number): void {
  const rgb = parseColor(n.fill);
  const f = Math.max(1, Math.round((n.size * scale) / 8));
  const cell = (GLYPH_W + 1) * f;
  const width = n.text.length * cell - f;
  const ox = n.anchor === "start" ? 0 : n.anchor === "middle" ? -width / 2 : -width;
  const bx = Math.round(n.x * scale);
  const by = Math.round(n.y * scale);
  for (let i = 0; i < n.text.length; i++) {
    const rows = glyph(n.text[i]);
    for (let r = 0; r < GLYPH_H; r++) {
      for (let c = 0; c < GLYPH_W; c++) {
        if (rows[r][c] !== "#") continue;
        for (let fy = 0; fy < f; fy++) {
          for (let fx = 0; fx < f; fx++) {
            const dx = Math.round(ox + i * cell + c * f + fx);
            const dy = (r - GLYPH_H + 1) * f + fy;
            if (n.rotate === 270) {
              p.set(bx + dy, by - dx, rgb); // quarter turn about the anchor
            } else {
              p.set(bx + dx, by + dy, rgb);
            }
          }
        }
      }
    }
  }
}

function drawNode(p: Painter, n: SceneNode, s: number): void {
  switch (n.kind) {
    case "rect":
      p.fillRect(
        Math.round(n.x * s),
        Math.round(n.y * s),
        Math.round((n.x + n.w) * s),
        Math.round((n.y + n.h) * s),
        parseColor(n.fill),
      );
      break;
    case "line":
      p.line(
        Math.round(n.x1 * s),
        Math.round(n.y1 * s),
        Math.round(n.x2 * s),
        Math.round(n.y2 * s),
        Math.max(1, Math.round(n.width * s)),
        parseColor(n.stroke),
      );
      break;
    case "polyline":
      for (let i = 1; i < n.points.length; i++) {
        p.line(
          Math.round(n.points[i - 1][0] * s),
          Math.round(n.points[i - 1][1] * s),
          Math.round(n.points[i][0] * s),
          Math.round(n.points[i][1] * s),
          Math.max(1, Math.round(n.width * s)),
          parseColor(n.stroke),
        );
      }
      break;
    case "circle":
      p.disc(Math.round(n.cx * s), Math.round(n.cy * s), Math.max(1, n.r * s), parseColor(n.fill));
      break;
    case "text":
      drawText(p, n, s);
      break;
  }
}

export function rasterize(scene: Scene, scale = 2): Raster {
  const p = new Painter(Math.round(scene.width * scale), Math.round(scene.height * scale));
  p.fillRect(0, 0, p.width, p.height, parseColor(scene.background));
  for (const n of scene.nodes) drawNode(p, n, scale);
  return { width: p.width, height: p.height, data: p.data };
}

// ---------------------------------------------------------------------------
// PNG encoding (8-bit RGBA, no interlace, filter 0 on every scanline)
// ---------------------------------------------------------------------------

const CRC_TABLE = (() => {
  const t = new Uint32Array(256);
  for (let n = 0; n < 256; n++) {
    let c = n;
    for (let k = 0; k < 8; k++) c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
    t[n] = c >>> 0;
  }
  return t;
})();

function crc32(buf: Buffer): number {
  let c = 0xffffffff;
  for (const b of buf) c = CRC_TABLE[(c ^ b) & 0xff] ^ (c >>> 8);
  return (c ^ 0xffffffff) >>> 0;
}

function chunk(type: string, data: Buffer): Buffer {
  const head = Buffer.alloc(4);
  head.writeUInt32BE(data.length);
  const body = Buffer.concat([Buffer.from(type, "ascii"), data]);
  const crc = Buffer.alloc(4);
  crc.writeUInt32BE(crc32(body));
  return Buffer.concat([head, body, crc]);
}

export function encodePng(r: Raster): Buffer {
  const ihdr = Buffer.alloc(13);
  ihdr.writeUInt32BE(r.width, 0);
  ihdr.writeUInt32BE(r.height, 4);
  ihdr[8] = 8; // bit depth
  ihdr[9] = 6; // RGBA
  const stride = r.width * 4;
  const raw = Buffer.alloc((stride + 1) * r.height);
  for (let y = 0; y < r.height; y++) {
    raw[y * (stride + 1)] = 0; // filter: none
    raw.set(r.data.subarray(y * stride, (y + 1) * stride), y * (stride + 1) + 1);
  }
  return Buffer.concat([
    Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]),
    chunk("IHDR", ihdr),
    chunk("IDAT", deflateSync(raw, { level: 9 })),
    chunk("IEND", Buffer.alloc(0)),
  ]);
}
