import { mkdtempSync, readFileSync, readdirSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import path from "node:path";
import { fileURLToPath } from "node:url";

import { afterEach, describe, expect, it, vi } from "vitest";

import { main, parseArgs } from "../src/cli.js";

const PRESETS = fileURLToPath(new URL("../presets", import.meta.url));

afterEach(() => {
  vi.restoreAllMocks();
});

describe("parseArgs", () => {
  it("requires a mode", () => {
    expect(() => parseArgs([])).toThrow(/--spec|--all/);
    expect(() => parseArgs(["--spec", "a", "--all"])).toThrow(/mutually exclusive/);
  });

  it("validates the format flag", () => {
    expect(() => parseArgs(["--all", "--format", "gif"])).toThrow(/svg, png or both/);
    expect(parseArgs(["--all", "--format", "png"]).format).toBe("png");
  });

  it("rejects stray arguments", () => {
    expect(() => parseArgs(["--all", "--wat"])).toThrow(/unknown argument/);
  });
});

describe("main", () => {
  it("renders every preset into svg and png files", () => {
    const out = mkdtempSync(path.join(tmpdir(), "figout-"));
    const log = vi.spyOn(console, "log").mockImplementation(() => {});
    const code = main(["--all", "--in", PRESETS, "--out", out]);
    expect(code).toBe(0);
    expect(log).toHaveBeenCalledTimes(6);
    const files = readdirSync(out).sort();
    expect(files.filter((f) => f.endsWith(".svg")).length).toBe(6);
    expect(files.filter((f) => f.endsWith(".png")).length).toBe(6);
    for (const call of log.mock.calls) {
      const info = JSON.parse(call[0] as string);
      expect(info.series).toBeGreaterThan(0);
      expect(info.written.length).toBe(2);
    }
  });

  it("writes identical bytes on a second run", () => {
    const a = mkdtempSync(path.join(tmpdir(), "figout-"));
    const b = mkdtempSync(path.join(tmpdir(), "figout-"));
    vi.spyOn(console, "log").mockImplementation(() => {});
    expect(main(["--all", "--in", PRESETS, "--out", a])).toBe(0);
    expect(main(["--all", "--in", PRESETS, "--out", b])).toBe(0);
    for (const f of readdirSync(a)) {
      expect(readFileSync(path.join(b, f)).equals(readFileSync(path.join(a, f)))).toBe(true);
    }
  });

  it("renders a single spec in one format", () => {
    const out = mkdtempSync(path.join(tmpdir(), "figout-"));
    const log = vi.spyOn(console, "log").mockImplementation(() => {});
    const code = main([
      "--spec",
      path.join(PRESETS, "runtime-vs-n.json"),
      "--out",
      out,
      "--format",
      "svg",
    ]);
    expect(code).toBe(0);
    expect(readdirSync(out)).toEqual(["runtime-vs-n.svg"]);
    expect(log).toHaveBeenCalledTimes(1);
  });

  it("reports usage errors on stderr with exit 2", () => {
    const err = vi.spyOn(console, "error").mockImplementation(() => {});
    expect(main(["--format"])).toBe(2);
    expect(err).toHaveBeenCalled();
  });

  it("fails cleanly on a broken spec file", () => {
    const dir = mkdtempSync(path.join(tmpdir(), "figspec-"));
    const err = vi.spyOn(console, "error").mockImplementation(() => {});
    const bad = path.join(dir, "bad.json");
    writeFileSync(bad, JSON.stringify({ name: "x", family: "pie" }));
    expect(main(["--spec", bad, "--out", dir])).toBe(1);
    expect(err.mock.calls[0][0]).toContain("bad.json");
  });
});
