/** Shelf and menu interactions: the manual paradigm's request builders. */

import type {
  AttributeSummaryJson,
  Cell,
  ChannelName,
  UiRequest,
  VisTypeName,
  WidgetJson,
} from "./types.js";

const categoricalLike = (attr: AttributeSummaryJson): boolean =>
  attr.kind === "categorical" || attr.discrete;

/** Client-side mirror of the engine's channel legality table, used to
 * reject bad shelf drops inline without a round trip. */
export function isDropLegal(
  visType: VisTypeName,
  channel: ChannelName,
  attr: AttributeSummaryJson,
): boolean {
  const bars = visType === "bar_chart" || visType === "stacked_bar_chart";
  switch (channel) {
    case "x":
      return bars ? categoricalLike(attr) : attr.kind === "quantitative";
    case "y":
      return attr.kind === "quantitative";
    case "size":
      return !bars && attr.kind === "quantitative";
    case "color":
      return bars ? categoricalLike(attr) : true;
  }
}

export const switchRequest = (target: VisTypeName): UiRequest => ({
  method: "POST",
  path: "/ops/switch",
  body: { target },
});

export const removeEncodingRequest = (channel: "color" | "size"): UiRequest => ({
  method: "POST",
  path: "/ops/remove",
  body: { channel },
});

export const sortRequest = (
  direction: "ascending" | "descending" | "none",
): UiRequest => ({
  method: "POST",
  path: "/ops/sort",
  body: { direction },
});

/** Toggle one checkbox in a value-set widget. */
export function toggleValueRequest(
  widget: WidgetJson,
  value: Cell,
): UiRequest | null {
  if (widget.kind !== "checkbox") return null;
  const checked = widget.values.filter(
    (v, i) => (v === value ? !widget.checked[i] : widget.checked[i]),
  );
  return {
    method: "POST",
    path: "/ops/update_filter",
    body: { rule_id: widget.rule_id, checked },
  };
}
