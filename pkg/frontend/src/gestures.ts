/**
 * Gesture interpretation: raw pointer events over the fixed layout become
 * engine requests and demonstrations.
 *
 * select mode (default)
 *   drag on empty view space   rubber-band selection of points
 *   down on a mark             select it (shift adds); keep dragging to
 *                              carry the selection
 *   drop selection on filter   drag_out demonstration
 *   drag a bar past an end     drag_bar demonstration
 *   swatch click               current selection becomes a recolor group
 *   submit                     flush pending recolor/resize demonstration
 * resize mode
 *   drag outward from a mark   demonstrated size from the drag distance
 *                              (applies to the whole selection)
 * panels
 *   attribute chip drop        set_axis / set_mark / add-filter request
 *                              (illegal shelves reject locally, no request)
 *   slider handle drag         update_filter with the final range
 */

import { inRect, type Rect, type UiLayout } from "./layout.js";
import {
  MIN_RADIUS,
  RADIUS_SPAN,
  markAt,
  marksInRect,
  type Scene,
} from "./scene.js";
import { isDropLegal } from "./shelves.js";
import type {
  AttributeSummaryJson,
  Cell,
  DemonstrationJson,
  UiRequest,
  VisTypeName,
  WidgetJson,
} from "./types.js";

export const DEFAULT_MARK_SIZE = 0.5;
const MAX_RADIUS = MIN_RADIUS + RADIUS_SPAN;

export type GestureEvent =
  | { type: "mode"; mode: "select" | "resize" }
  | { type: "pointerdown"; x: number; y: number; shift?: boolean }
  | { type: "pointermove"; x: number; y: number }
  | { type: "pointerup"; x: number; y: number }
  | { type: "swatch"; color: string }
  | { type: "submit" };

export type GestureOutput =
  | { kind: "request"; request: UiRequest }
  | { kind: "demonstration"; demonstration: DemonstrationJson }
  | { kind: "selection"; rows: number[] }
  | { kind: "rejected"; reason: string };

type Drag =
  | { kind: "rubber"; startX: number; startY: number }
  | { kind: "selection" }
  | { kind: "attribute"; name: string }
  | { kind: "bar"; category: Cell }
  | { kind: "resizing"; cx: number; cy: number; rows: number[] }
  | { kind: "slider"; index: number; handle: "lo" | "hi" };

export interface GestureContext {
  layout: UiLayout;
  scene(): Scene | null;
  widgets(): WidgetJson[];
  attributes(): AttributeSummaryJson[];
  visType(): VisTypeName;
}

const round2 = (value: number): number => Math.round(value * 100) / 100;

export class GestureInterpreter {
  private mode: "select" | "resize" = "select";
  private drag: Drag | null = null;
  private selection = new Set<number>();
  private selectionOrigin: "rubber-band" | "click" | "lasso" = "click";
  private recolorGroups: {
    color: string;
    rows: number[];
    origin: "rubber-band" | "click" | "lasso";
  }[] = [];
  private pendingResize = new Map<number, number>();

  constructor(private context: GestureContext) {}

  selectedRows(): number[] {
    return [...this.selection].sort((a, b) => a - b);
  }

  handle(event: GestureEvent): GestureOutput[] {
    switch (event.type) {
      case "mode":
        this.mode = event.mode;
        return [];
      case "pointerdown":
        return this.down(event.x, event.y, event.shift ?? false);
      case "pointermove":
        return [];
      case "pointerup":
        return this.up(event.x, event.y);
      case "swatch":
        return this.applySwatch(event.color);
      case "submit":
        return this.submit();
    }
  }

  private down(x: number, y: number, shift: boolean): GestureOutput[] {
    const { layout } = this.context;
    if (inRect(layout.attributePanel, x, y)) {
      const attrs = this.context.attributes();
      for (let i = 0; i < attrs.length; i++) {
        if (inRect(layout.attributeChip(i), x, y)) {
          this.drag = { kind: "attribute", name: attrs[i].name };
          return [];
        }
      }
      return [];
    }
    if (inRect(layout.filterPanel, x, y)) {
      const widgets = this.context.widgets();
      for (let i = 0; i < widgets.length; i++) {
        const widget = widgets[i];
        if (widget.kind !== "range") continue;
        const track = layout.sliderTrack(i);
        if (!inRect(track, x, y)) continue;
        const px = (value: number): number =>
          track.x0 +
          ((value - widget.domain[0]) /
            (widget.domain[1] - widget.domain[0] || 1)) *
            (track.x1 - track.x0);
        const handle =
          Math.abs(x - px(widget.selected[0])) <=
          Math.abs(x - px(widget.selected[1]))
            ? "lo"
            : "hi";
        this.drag = { kind: "slider", index: i, handle };
        return [];
      }
      return [];
    }
    if (!inRect(layout.view, x, y)) return [];
    const scene = this.context.scene();
    if (scene === null) return [];
    const mark = markAt(scene, x, y);
    if (mark === null) {
      this.drag = { kind: "rubber", startX: x, startY: y };
      return [];
    }
    if (mark.kind !== "point") {
      this.drag = { kind: "bar", category: mark.source };
      return [];
    }
    const row = mark.source as number;
    if (this.mode === "resize") {
      const rows = this.selection.has(row) ? this.selectedRows() : [row];
      this.drag = { kind: "resizing", cx: mark.cx, cy: mark.cy, rows };
      return [];
    }
    if (!this.selection.has(row)) {
      if (!shift) this.selection.clear();
      this.selection.add(row);
      this.selectionOrigin = "click";
      this.drag = { kind: "selection" };
      return [{ kind: "selection", rows: this.selectedRows() }];
    }
    this.drag = { kind: "selection" };
    return [];
  }

  private up(x: number, y: number): GestureOutput[] {
    const drag = this.drag;
    this.drag = null;
    if (drag === null) return [];
    const { layout } = this.context;

    switch (drag.kind) {
      case "rubber": {
        const scene = this.context.scene();
        if (scene === null) return [];
        const hits = marksInRect(scene, drag.startX, drag.startY, x, y).filter(
          (m) => m.kind === "point",
        );
        this.selection = new Set(hits.map((m) => m.source as number));
        this.selectionOrigin = "rubber-band";
        return [{ kind: "selection", rows: this.selectedRows() }];
      }
      case "selection": {
        if (!inRect(layout.filterPanel, x, y) || this.selection.size === 0) {
          return [];
        }
        const demonstration: DemonstrationJson = {
          kind: "drag_out",
          selection: { rows: this.selectedRows(), origin: this.selectionOrigin },
        };
        return [{ kind: "demonstration", demonstration }];
      }
      case "attribute":
        return this.dropAttribute(drag.name, x, y);
      case "bar":
        return this.dropBar(drag.category, x);
      case "resizing": {
        const distance = Math.hypot(x - drag.cx, y - drag.cy);
        const size = Math.min(1, Math.max(0.05, round2(distance / MAX_RADIUS)));
        for (const row of drag.rows) this.pendingResize.set(row, size);
        return [];
      }
      case "slider": {
        const widget = this.context.widgets()[drag.index];
        if (widget === undefined || widget.kind !== "range") return [];
        const track = layout.sliderTrack(drag.index);
        const clamped = Math.min(track.x1, Math.max(track.x0, x));
        const span = widget.domain[1] - widget.domain[0];
        const value = round2(
          widget.domain[0] +
            ((clamped - track.x0) / (track.x1 - track.x0)) * span,
        );
        const [lo, hi] = widget.selected;
        const range: [number, number] =
          drag.handle === "lo"
            ? [Math.min(value, hi), hi]
            : [lo, Math.max(value, lo)];
        return [
          {
            kind: "request",
            request: {
              method: "POST",
              path: "/ops/update_filter",
              body: { rule_id: widget.rule_id, range },
            },
          },
        ];
      }
    }
  }

  private dropAttribute(name: string, x: number, y: number): GestureOutput[] {
    const { layout } = this.context;
    if (inRect(layout.filterPanel, x, y)) {
      return [
        {
          kind: "request",
          request: {
            method: "POST",
            path: "/ops/filter",
            body: { attribute: name },
          },
        },
      ];
    }
    for (const channel of ["x", "y", "color", "size"] as const) {
      if (!inRect(layout.shelves[channel], x, y)) continue;
      const attr = this.context.attributes().find((a) => a.name === name);
      if (attr === undefined) return [];
      if (!isDropLegal(this.context.visType(), channel, attr)) {
        return [
          {
            kind: "rejected",
            reason: `${name} cannot be dropped on the ${channel} shelf`,
          },
        ];
      }
      const verb = channel === "x" || channel === "y" ? "set_axis" : "set_mark";
      return [
        {
          kind: "request",
          request: {
            method: "POST",
            path: `/ops/${verb}`,
            body: { channel, attribute: name },
          },
        },
      ];
    }
    return [];
  }

  private dropBar(category: Cell, x: number): GestureOutput[] {
    const scene = this.context.scene();
    if (scene === null || scene.barOrder === null || scene.barOrder.length === 0) {
      return [];
    }
    const centers = scene.barOrder.map((cat) => {
      const bar = scene.marks.find((m) => m.source === cat);
      return bar === undefined ? Number.NaN : bar.cx;
    });
    // a drop counts as extreme when it passes the outermost bar's center
    let target: "extreme_left" | "extreme_right" | null = null;
    if (x > centers[centers.length - 1]) target = "extreme_right";
    else if (x < centers[0]) target = "extreme_left";
    if (target === null) return [];
    return [
      {
        kind: "demonstration",
        demonstration: { kind: "drag_bar", category, target },
      },
    ];
  }

  private applySwatch(color: string): GestureOutput[] {
    if (this.selection.size === 0) {
      return [{ kind: "rejected", reason: "recolor needs a selection" }];
    }
    this.recolorGroups.push({
      color: color.toLowerCase(),
      rows: this.selectedRows(),
      origin: this.selectionOrigin,
    });
    this.selection.clear();
    return [];
  }

  private submit(): GestureOutput[] {
    if (this.recolorGroups.length > 0) {
      const demonstration: DemonstrationJson = {
        kind: "recolor",
        groups: this.recolorGroups.map((group) => ({
          color: group.color,
          selection: { rows: group.rows, origin: group.origin },
        })),
      };
      this.recolorGroups = [];
      return [{ kind: "demonstration", demonstration }];
    }
    if (this.pendingResize.size > 0) {
      const sizes = new Map(this.pendingResize);
      this.pendingResize.clear();
      const distinct = new Set(sizes.values());
      if (distinct.size < 2) {
        // an enlargement alone says "bigger than the rest": anchor the
        // demonstration with the first untouched mark at its current size
        const scene = this.context.scene();
        const untouched = (scene?.marks ?? [])
          .filter(
            (m) => m.kind === "point" && !sizes.has(m.source as number),
          )
          .map((m) => m.source as number)
          .sort((a, b) => a - b);
        if (untouched.length > 0) {
          sizes.set(untouched[0], DEFAULT_MARK_SIZE);
        }
      }
      const entries = [...sizes.entries()].sort((a, b) => a[0] - b[0]);
      return [
        {
          kind: "demonstration",
          demonstration: {
            kind: "resize",
            sizes: entries.map(([row, size]) => ({ row, size })),
          },
        },
      ];
    }
    return [];
  }
}
