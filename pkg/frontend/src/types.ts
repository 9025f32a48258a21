/** Wire types mirroring the engine's canonical JSON (docs/schemas/). */

export type Cell = number | string;

export type VisTypeName = "scatterplot" | "bar_chart" | "stacked_bar_chart";
export type ChannelName = "x" | "y" | "color" | "size";

export interface PaletteEntryJson {
  color: string;
  value?: Cell;
  interval?: [number, number];
}

export interface PaletteJson {
  entries: PaletteEntryJson[];
  default_color: string;
  customized: boolean;
}

export interface BindingJson {
  channel: ChannelName;
  attribute: string;
  palette: PaletteJson | null;
  provenance: "mvs" | "vbd";
}

export interface RangeRuleJson {
  id: string;
  form: "range";
  attribute: string;
  lo: number;
  hi: number;
  exclude: boolean;
  provenance: "mvs" | "vbd";
}

export interface ValueRuleJson {
  id: string;
  form: "values";
  attribute: string;
  included: Cell[];
  provenance: "mvs" | "vbd";
}

export interface PointRuleJson {
  id: string;
  form: "points";
  excluded: number[];
  provenance: "mvs" | "vbd";
}

export type FilterRuleJson = RangeRuleJson | ValueRuleJson | PointRuleJson;

export interface VisSpecJson {
  vis_type: VisTypeName;
  bindings: BindingJson[];
  filters: FilterRuleJson[];
  sort: { by: string | null; direction: "ascending" | "descending" | "none" };
  revision: number;
}

export interface MarkJson {
  mark_id: string;
  source: Cell;
  x: number;
  y: number;
  size: number;
  color: string;
  y0?: number;
  stack_value?: Cell;
}

export interface AxisJson {
  attribute: string;
  kind: "quantitative" | "categorical";
  extent: [number, number] | null;
  categories: Cell[] | null;
}

export interface ViewModelJson {
  revision: number;
  marks: MarkJson[];
  axes: { x: AxisJson; y: AxisJson };
  bar_order: Cell[] | null;
}

export interface RangeWidgetJson {
  rule_id: string;
  attribute: string;
  kind: "range";
  domain: [number, number];
  selected: [number, number];
  mode: "keep" | "exclude";
  visible_count: number;
  excluded_count: number;
}

export interface CheckboxWidgetJson {
  rule_id: string;
  attribute: string;
  kind: "checkbox";
  values: Cell[];
  checked: boolean[];
  visible_count: number;
  excluded_count: number;
}

export interface ChipWidgetJson {
  rule_id: string;
  attribute: null;
  kind: "chip";
  visible_count: number;
  excluded_count: number;
}

export type WidgetJson = RangeWidgetJson | CheckboxWidgetJson | ChipWidgetJson;

export interface RecommendationJson {
  rec_id: string;
  explanation: string;
  score: number;
  state: "pending" | "accepted" | "rejected" | "expired";
  change: { op: string; [key: string]: unknown };
  evidence?: Record<string, unknown>;
}

export interface DivisionJson {
  name: string;
  recommendations: RecommendationJson[];
  hidden_count: number;
}

export interface RecommendationSetJson {
  base_revision: number | null;
  divisions: DivisionJson[];
}

export interface AttributeSummaryJson {
  name: string;
  kind: "quantitative" | "categorical";
  discrete: boolean;
  distinct_count: number;
  missing_count: number;
  extent?: [number, number] | null;
  categories?: Cell[];
}

export interface DatasetSummaryJson {
  id: string;
  row_count: number;
  attributes: AttributeSummaryJson[];
}

export interface SessionInfoJson {
  session_id: string;
  dataset: DatasetSummaryJson;
  revision: number;
  spec: VisSpecJson;
  view: ViewModelJson | null;
}

export interface SelectionJson {
  rows: number[];
  origin: "lasso" | "click" | "rubber-band";
}

export type DemonstrationJson =
  | { kind: "recolor"; groups: { color: string; selection: SelectionJson }[] }
  | { kind: "resize"; sizes: { row: number; size: number }[] }
  | { kind: "drag_out"; selection: SelectionJson }
  | { kind: "drag_bar"; category: Cell; target: "extreme_left" | "extreme_right" };

/** A request the UI wants to send; the api client fills in the session. */
export interface UiRequest {
  method: "POST";
  path: string;
  body: unknown;
}
