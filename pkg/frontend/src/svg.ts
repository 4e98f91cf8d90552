/** Small SVG figure builder: stacked panels with linear axes. */

import { ticks } from "d3-array";
import { scaleLinear, type ScaleLinear } from "d3-scale";
import { line } from "d3-shape";

export interface Curve {
  x: number[];
  y: number[];
  color: string;
  dash?: string;
  label?: string;
  width?: number;
}

export interface Band {
  x0: number;
  x1: number;
  color?: string;
}

export interface VLine {
  x: number;
  color?: string;
}

export interface ErrorBar {
  x: number;
  y: number;
  dy: number;
  color: string;
}

export interface Panel {
  curves: Curve[];
  bands?: Band[];
  vlines?: VLine[];
  errorBars?: ErrorBar[];
  xLabel?: string;
  yLabel: string;
  yDomain?: [number, number];
  legend?: boolean;
}

const MARGIN = { top: 28, right: 16, bottom: 42, left: 62 };
const PANEL_W = 560;
const PANEL_H = 230;

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function extent(vals: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of vals) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (!Number.isFinite(lo)) throw new Error("empty data extent");
  if (lo === hi) hi = lo + 1;
  return [lo, hi];
}

function axis(
  sx: ScaleLinear<number, number>,
  sy: ScaleLinear<number, number>,
  p: Panel,
): string {
  const [x0, x1] = sx.domain();
  const [y0, y1] = sy.domain();
  const parts: string[] = [];
  const left = sx.range()[0];
  const right = sx.range()[1];
  const bottom = sy.range()[0];
  const top = sy.range()[1];
  parts.push(
    `<rect x="${left}" y="${top}" width="${right - left}" height="${bottom - top}" fill="none" stroke="black"/>`,
  );
  for (const t of ticks(x0, x1, 6)) {
    const x = sx(t);
    parts.push(`<line x1="${x}" y1="${bottom}" x2="${x}" y2="${bottom + 5}" stroke="black"/>`);
    parts.push(
      `<text x="${x}" y="${bottom + 18}" text-anchor="middle" font-size="11">${t}</text>`,
    );
  }
  for (const t of ticks(y0, y1, 5)) {
    const y = sy(t);
    parts.push(`<line x1="${left - 5}" y1="${y}" x2="${left}" y2="${y}" stroke="black"/>`);
    parts.push(
      `<text x="${left - 8}" y="${y + 4}" text-anchor="end" font-size="11">${Number(t.toPrecision(4))}</text>`,
    );
  }
  if (p.xLabel) {
    parts.push(
      `<text x="${(left + right) / 2}" y="${bottom + 34}" text-anchor="middle" font-size="12">${esc(p.xLabel)}</text>`,
    );
  }
  parts.push(
    `<text x="${left - 46}" y="${(top + bottom) / 2}" text-anchor="middle" font-size="12" transform="rotate(-90 ${left - 46} ${(top + bottom) / 2})">${esc(p.yLabel)}</text>`,
  );
  return parts.join("\n");
}

function renderPanel(p: Panel, yOffset: number): string {
  const xs = p.curves.flatMap((c) => c.x);
  const ys = p.curves.flatMap((c) => c.y);
  const sx = scaleLinear()
    .domain(extent(xs))
    .range([MARGIN.left, MARGIN.left + PANEL_W]);
  const [yLo, yHi] = p.yDomain ?? extent(ys);
  const sy = scaleLinear()
    .domain([yLo, yHi])
    .range([yOffset + MARGIN.top + PANEL_H, yOffset + MARGIN.top]);
  const parts: string[] = [];

  for (const b of p.bands ?? []) {
    const x0 = sx(b.x0);
    parts.push(
      `<rect class="band" x="${x0}" y="${sy.range()[1]}" width="${Math.max(sx(b.x1) - x0, 1)}" height="${PANEL_H}" fill="${b.color ?? "#cccccc"}" opacity="0.45"/>`,
    );
  }
  for (const v of p.vlines ?? []) {
    parts.push(
      `<line class="vline" x1="${sx(v.x)}" y1="${sy.range()[0]}" x2="${sx(v.x)}" y2="${sy.range()[1]}" stroke="${v.color ?? "#888888"}" stroke-dasharray="2,3"/>`,
    );
  }
  for (const c of p.curves) {
    const gen = line<[number, number]>()
      .x((d) => sx(d[0]))
      .y((d) => sy(Math.min(Math.max(d[1], yLo), yHi)));
    const pts = c.x.map((x, i) => [x, c.y[i]] as [number, number]);
    const dash = c.dash ? ` stroke-dasharray="${c.dash}"` : "";
    parts.push(
      `<path class="curve" d="${gen(pts)}" fill="none" stroke="${c.color}" stroke-width="${c.width ?? 1.6}"${dash}/>`,
    );
  }
  for (const e of p.errorBars ?? []) {
    const x = sx(e.x);
    parts.push(
      `<line class="errbar" x1="${x}" y1="${sy(e.y - e.dy)}" x2="${x}" y2="${sy(e.y + e.dy)}" stroke="${e.color}" stroke-width="1"/>`,
    );
  }
  if (p.legend) {
    let lx = MARGIN.left + PANEL_W - 150;
    let ly = yOffset + MARGIN.top + 14;
    for (const c of p.curves) {
      if (!c.label) continue;
      const dash = c.dash ? ` stroke-dasharray="${c.dash}"` : "";
      parts.push(
        `<line x1="${lx}" y1="${ly - 4}" x2="${lx + 26}" y2="${ly - 4}" stroke="${c.color}" stroke-width="2"${dash}/>`,
      );
      parts.push(`<text x="${lx + 32}" y="${ly}" font-size="11">${esc(c.label)}</text>`);
      ly += 15;
    }
  }
  parts.push(axis(sx, sy, p));
  return parts.join("\n");
}

export function renderFigure(title: string, panels: Panel[]): string {
  const panelFull = MARGIN.top + PANEL_H + MARGIN.bottom;
  const width = MARGIN.left + PANEL_W + MARGIN.right;
  const height = panels.length * panelFull + 8;
  const body = panels.map((p, i) => renderPanel(p, i * panelFull)).join("\n");
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" width="${width}" height="${height}" font-family="sans-serif">`,
    `<rect width="${width}" height="${height}" fill="white"/>`,
    `<text x="${width / 2}" y="18" text-anchor="middle" font-size="13">${esc(title)}</text>`,
    body,
    `</svg>`,
  ].join("\n");
}
