/** Fixed panel geometry. Pointer events arrive in page coordinates and the
 * gesture interpreter maps them onto these rectangles. */

export interface Rect {
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}

export const inRect = (rect: Rect, x: number, y: number): boolean =>
  x >= rect.x0 && x <= rect.x1 && y >= rect.y0 && y <= rect.y1;

export interface UiLayout {
  width: number;
  height: number;
  view: Rect;
  attributePanel: Rect;
  filterPanel: Rect;
  recommendationPanel: Rect;
  shelves: Record<"x" | "y" | "color" | "size", Rect>;
  showMe: Record<"scatterplot" | "bar_chart" | "stacked_bar_chart", Rect>;
  /** Attribute chip rect by list index within the attribute panel. */
  attributeChip(index: number): Rect;
  /** Range-slider track rect for the widget at a filter-panel index. */
  sliderTrack(index: number): Rect;
}

export function defaultLayout(width = 1200, height = 800): UiLayout {
  const right = { x0: width - 250, x1: width - 10 };
  const shelfRow = (i: number): Rect => ({
    x0: right.x0,
    y0: 60 + 50 * i,
    x1: right.x1,
    y1: 60 + 50 * i + 36,
  });
  const menuItem = (i: number): Rect => ({
    x0: 190 + 130 * i,
    y0: 10,
    x1: 190 + 130 * i + 120,
    y1: 38,
  });
  return {
    width,
    height,
    view: { x0: 200, y0: 50, x1: width - 270, y1: height - 20 },
    attributePanel: { x0: 0, y0: 50, x1: 180, y1: height - 20 },
    filterPanel: { x0: right.x0, y0: 260, x1: right.x1, y1: 500 },
    recommendationPanel: { x0: right.x0, y0: 510, x1: right.x1, y1: height - 10 },
    shelves: {
      x: shelfRow(0),
      y: shelfRow(1),
      color: shelfRow(2),
      size: shelfRow(3),
    },
    showMe: {
      scatterplot: menuItem(0),
      bar_chart: menuItem(1),
      stacked_bar_chart: menuItem(2),
    },
    attributeChip(index: number): Rect {
      return { x0: 10, y0: 60 + 40 * index, x1: 170, y1: 60 + 40 * index + 28 };
    },
    sliderTrack(index: number): Rect {
      const y = 260 + 40 + 70 * index;
      return { x0: right.x0 + 10, y0: y - 6, x1: right.x1 - 10, y1: y + 6 };
    },
  };
}

export const rectCenter = (rect: Rect): { x: number; y: number } => ({
  x: (rect.x0 + rect.x1) / 2,
  y: (rect.y0 + rect.y1) / 2,
});
