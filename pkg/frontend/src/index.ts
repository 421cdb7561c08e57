export { loadTable, requireColumns, num } from "./csv.js";
export type { Table } from "./csv.js";
export { pool } from "./stats.js";
export type { CellStat, Pooled } from "./stats.js";
export { makeScale, linearTicks, logTicks, niceStep, tickLabel, viridis } from "./scale.js";
export type { AxisScale } from "./scale.js";
export { scene, fmt } from "./scene.js";
export type { Scene, SceneNode } from "./scene.js";
export { toSvg } from "./svg.js";
export { rasterize, encodePng } from "./raster.js";
export type { Raster } from "./raster.js";
export { buildFigure, parseFigureSpec, loadFigureSpec, collectSeries } from "./figure.js";
export type { FigureSpec, LineSpec, HeatmapSpec, FigureInfo, BuiltFigure, Family } from "./figure.js";
export { renderSpecFile, main as cliMain } from "./cli.js";
