/**
 * Batch figure renderer.
 *
 * Usage:
 *   render --spec presets/runtime-vs-n.json [--out out/] [--format svg|png|both]
 *   render --all [--in presets/] [--out out/] [--format svg|png|both]
 *
 * One JSON line per rendered figure goes to stdout (name, family, axis
 * labels, series/point counts, written files).
 */

import { mkdirSync, readdirSync, writeFileSync } from "node:fs";
import path from "node:path";
import { fileURLToPath } from "node:url";

import { buildFigure, loadFigureSpec } from "./figure.js";
import { toSvg } from "./svg.js";
import { encodePng, rasterize } from "./raster.js";

const PKG_ROOT = path.resolve(path.dirname(fileURLToPath(import.meta.url)), "..");

export type Format = "svg" | "png" | "both";

interface Args {
  spec?: string;
  all: boolean;
  inDir: string;
  outDir: string;
  format: Format;
}

export function parseArgs(argv: string[]): Args {
  const args: Args = {
    all: false,
    inDir: path.join(PKG_ROOT, "presets"),
    outDir: path.join(PKG_ROOT, "out"),
    format: "both",
  };
  for (let i = 0; i < argv.length; i++) {
    const a = argv[i];
    const next = () => {
      if (i + 1 >= argv.length) throw new Error(`${a} needs a value`);
      return argv[++i];
    };
    if (a === "--spec") args.spec = next();
    else if (a === "--all") args.all = true;
    else if (a === "--in") args.inDir = next();
    else if (a === "--out") args.outDir = next();
    else if (a === "--format") {
      const f = next();
      if (f !== "svg" && f !== "png" && f !== "both") {
        throw new Error(`--format must be svg, png or both, got "${f}"`);
      }
      args.format = f;
    } else throw new Error(`unknown argument "${a}"`);
  }
  if (!args.spec && !args.all) throw new Error("pass --spec <file> or --all");
  if (args.spec && args.all) throw new Error("--spec and --all are mutually exclusive");
  return args;
}

export function renderSpecFile(specFile: string, outDir: string, format: Format): object {
  const spec = loadFigureSpec(specFile);
  const { scene, info } = buildFigure(spec);
  mkdirSync(outDir, { recursive: true });
  const written: string[] = [];
  if (format !== "png") {
    const f = path.join(outDir, `${spec.name}.svg`);
    writeFileSync(f, toSvg(scene));
    written.push(f);
  }
  if (format !== "svg") {
    const f = path.join(outDir, `${spec.name}.png`);
    writeFileSync(f, encodePng(rasterize(scene)));
    written.push(f);
  }
  return { ...info, written };
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (e) {
    console.error(`error: ${(e as Error).message}`);
    return 2;
  }
  const files = args.spec
    ? [args.spec]
    : readdirSync(args.inDir)
        .filter((f) => f.endsWith(".json"))
        .sort()
        .map((f) => path.join(args.inDir, f));
  if (files.length === 0) {
    console.error(`error: no .json specs in ${args.inDir}`);
    return 2;
  }
  for (const file of files) {
    try {
      console.log(JSON.stringify(renderSpecFile(file, args.outDir, args.format)));
    } catch (e) {
      console.error(`error: ${file}: ${(e as Error).message}`);
      return 1;
    }
  }
  return 0;
}

if (process.argv[1] && path.resolve(process.argv[1]) === fileURLToPath(import.meta.url)) {
  process.exit(main(process.argv.slice(2)));
}
