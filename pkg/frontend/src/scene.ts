/**
 * Scene building: normalized view-model geometry to pixels, hit-testing,
 * and deterministic SVG rendering.
 *
 * Engine coordinates are [0,1] with y growing upward; pixels grow downward.
 * Bars are drawn from the view's bottom edge; scatter marks are circles with
 * radius 4 + size * 16.
 */

import type { Rect } from "./layout.js";
import type { Cell, MarkJson, ViewModelJson } from "./types.js";

export const MIN_RADIUS = 4;
export const RADIUS_SPAN = 16;

export interface SceneMark {
  markId: string;
  source: Cell;
  kind: "point" | "bar" | "segment";
  cx: number;
  cy: number;
  /** point radius, or half the bar width */
  r: number;
  /** bars/segments: top and bottom pixel edges */
  top: number;
  bottom: number;
  color: string;
  selected: boolean;
}

export interface Scene {
  rect: Rect;
  visType: "points" | "bars";
  marks: SceneMark[];
  barOrder: Cell[] | null;
}

export function buildScene(
  view: ViewModelJson,
  rect: Rect,
  selection: ReadonlySet<number> = new Set(),
): Scene {
  const width = rect.x1 - rect.x0;
  const height = rect.y1 - rect.y0;
  const isBars = view.bar_order !== null;
  const slot = isBars && view.bar_order!.length > 0 ? width / view.bar_order!.length : width;
  const marks: SceneMark[] = view.marks.map((mark: MarkJson) => {
    const cx = rect.x0 + mark.x * width;
    if (!isBars) {
      return {
        markId: mark.mark_id,
        source: mark.source,
        kind: "point" as const,
        cx,
        cy: rect.y0 + (1 - mark.y) * height,
        r: MIN_RADIUS + mark.size * RADIUS_SPAN,
        top: 0,
        bottom: 0,
        color: mark.color,
        selected:
          typeof mark.source === "number" && selection.has(mark.source),
      };
    }
    const y0 = mark.y0 ?? 0;
    const top = rect.y1 - (y0 + mark.y) * height;
    const bottom = rect.y1 - y0 * height;
    return {
      markId: mark.mark_id,
      source: mark.source,
      kind: mark.stack_value !== undefined ? ("segment" as const) : ("bar" as const),
      cx,
      cy: (top + bottom) / 2,
      r: slot * 0.35,
      top,
      bottom,
      color: mark.color,
      selected: false,
    };
  });
  return {
    rect,
    visType: isBars ? "bars" : "points",
    marks,
    barOrder: view.bar_order,
  };
}

export function markAt(scene: Scene, x: number, y: number): SceneMark | null {
  // topmost (last drawn) first
  for (let i = scene.marks.length - 1; i >= 0; i--) {
    const mark = scene.marks[i];
    if (mark.kind === "point") {
      const dx = x - mark.cx;
      const dy = y - mark.cy;
      if (dx * dx + dy * dy <= mark.r * mark.r) return mark;
    } else if (
      Math.abs(x - mark.cx) <= mark.r &&
      y >= mark.top &&
      y <= mark.bottom
    ) {
      return mark;
    }
  }
  return null;
}

/** Marks whose center lies inside the band (the band may extend past the
 * view edges, so corner marks stay selectable). */
export function marksInRect(
  scene: Scene,
  x0: number,
  y0: number,
  x1: number,
  y1: number,
): SceneMark[] {
  const [lox, hix] = x0 <= x1 ? [x0, x1] : [x1, x0];
  const [loy, hiy] = y0 <= y1 ? [y0, y1] : [y1, y0];
  return scene.marks.filter(
    (m) => m.cx >= lox && m.cx <= hix && m.cy >= loy && m.cy <= hiy,
  );
}

export function selectedRowIds(scene: Scene): number[] {
  return scene.marks
    .filter((m) => m.selected && typeof m.source === "number")
    .map((m) => m.source as number)
    .sort((a, b) => a - b);
}

const fmt = (value: number): string => {
  const rounded = Math.round(value * 100) / 100;
  return Object.is(rounded, -0) ? "0" : String(rounded);
};

export interface RenderOptions {
  /** dim the scene (committed view behind a preview overlay) */
  dimmed?: boolean;
  /** render as a translucent preview layer */
  preview?: boolean;
}

export function sceneToSvg(scene: Scene, options: RenderOptions = {}): string {
  const opacity = options.dimmed ? 0.25 : options.preview ? 0.75 : 1;
  const cls = options.preview ? "preview" : options.dimmed ? "dimmed" : "committed";
  const parts: string[] = [
    `<g class="${cls}" opacity="${fmt(opacity)}">`,
  ];
  for (const mark of scene.marks) {
    const stroke = mark.selected ? ' stroke="#111111" stroke-width="2"' : "";
    if (mark.kind === "point") {
      parts.push(
        `<circle id="${mark.markId}" cx="${fmt(mark.cx)}" cy="${fmt(mark.cy)}"` +
          ` r="${fmt(mark.r)}" fill="${mark.color}"${stroke}/>`,
      );
    } else {
      const x = mark.cx - mark.r;
      const w = mark.r * 2;
      const h = mark.bottom - mark.top;
      parts.push(
        `<rect id="${mark.markId}" x="${fmt(x)}" y="${fmt(mark.top)}"` +
          ` width="${fmt(w)}" height="${fmt(h)}" fill="${mark.color}"${stroke}/>`,
      );
    }
  }
  parts.push("</g>");
  return parts.join("");
}
