/**
 * UiController: the client's single source of truth.
 *
 * Panels are pure projections of server state (spec, widgets,
 * recommendations, dataset schema) plus transient gesture state, so a page
 * reload that refetches the same state reproduces identical panels. Hover
 * previews render the previewed view at full strength over a dimmed
 * committed view and never touch committed state.
 */

import { ApiClient } from "./api.js";
import { GestureInterpreter, type GestureEvent, type GestureOutput } from "./gestures.js";
import { defaultLayout, type UiLayout } from "./layout.js";
import { buildScene, sceneToSvg, type Scene } from "./scene.js";
import {
  removeEncodingRequest,
  sortRequest,
  switchRequest,
  toggleValueRequest,
} from "./shelves.js";
import { EventStream } from "./sse.js";
import type {
  ChannelName,
  DatasetSummaryJson,
  DemonstrationJson,
  RecommendationSetJson,
  SessionInfoJson,
  UiRequest,
  ViewModelJson,
  VisSpecJson,
  VisTypeName,
  WidgetJson,
  Cell,
} from "./types.js";

export interface EncodingShelf {
  channel: ChannelName;
  attribute: string | null;
  customized: boolean;
}

export interface RecommendationItem {
  recId: string;
  explanation: string;
  score: number;
  state: string;
}

export interface PanelState {
  showMe: { options: VisTypeName[]; active: VisTypeName };
  attributes: { name: string; kind: string; discrete: boolean }[];
  encodingShelves: EncodingShelf[];
  filterWidgets: WidgetJson[];
  recommendations: { division: string; items: RecommendationItem[] }[];
}

export class UiController {
  layout: UiLayout;
  gestures: GestureInterpreter;

  sessionId = "";
  dataset: DatasetSummaryJson | null = null;
  spec: VisSpecJson | null = null;
  view: ViewModelJson | null = null;
  widgets: WidgetJson[] = [];
  recommendations: RecommendationSetJson = { base_revision: null, divisions: [] };
  previewView: ViewModelJson | null = null;
  lastRejection: string | null = null;

  private events: EventStream | null = null;
  private listeners: (() => void)[] = [];

  constructor(
    private api: ApiClient,
    layout: UiLayout = defaultLayout(),
  ) {
    this.layout = layout;
    this.gestures = new GestureInterpreter({
      layout: this.layout,
      scene: () => this.scene(),
      widgets: () => this.widgets,
      attributes: () => this.dataset?.attributes ?? [],
      visType: () => this.spec?.vis_type ?? "scatterplot",
    });
  }

  onChange(listener: () => void): void {
    this.listeners.push(listener);
  }

  private changed(): void {
    for (const listener of this.listeners) listener();
  }

  async init(createBody: unknown): Promise<SessionInfoJson> {
    const info = await this.api.createSession(createBody);
    this.sessionId = info.session_id;
    this.dataset = info.dataset;
    this.spec = info.spec;
    this.view = info.view;
    await this.refresh();
    return info;
  }

  async refresh(): Promise<void> {
    const sid = this.sessionId;
    const [spec, view, widgets, recommendations] = await Promise.all([
      this.api.getSpec(sid),
      this.api.getView(sid),
      this.api.getFilters(sid),
      this.api.getRecommendations(sid, true),
    ]);
    this.spec = spec;
    this.view = view;
    this.widgets = widgets;
    this.recommendations = recommendations;
    this.changed();
  }

  /** Subscribe to server pushes; state refreshes on every change event. */
  connectEvents(): void {
    this.events = new EventStream(
      `${this.api.baseUrl}/sessions/${this.sessionId}/events`,
    );
    const refresh = () => void this.refresh();
    this.events.on("spec_changed", refresh);
    this.events.on("recommendations_changed", refresh);
  }

  disconnect(): void {
    this.events?.close();
    this.events = null;
  }

  scene(): Scene | null {
    if (this.view === null) return null;
    return buildScene(
      this.view,
      this.layout.view,
      new Set(this.gestures.selectedRows()),
    );
  }

  /** The main-view SVG: committed scene, or dimmed committed scene with the
   * preview drawn over it while a recommendation is hovered. */
  renderedSvg(): string {
    const committed = this.scene();
    if (committed === null) return "";
    if (this.previewView === null) return sceneToSvg(committed);
    const preview = buildScene(this.previewView, this.layout.view);
    return (
      sceneToSvg(committed, { dimmed: true }) +
      sceneToSvg(preview, { preview: true })
    );
  }

  panels(): PanelState {
    const spec = this.spec;
    const channels: ChannelName[] = ["x", "y", "color", "size"];
    return {
      showMe: {
        options: ["scatterplot", "bar_chart", "stacked_bar_chart"],
        active: spec?.vis_type ?? "scatterplot",
      },
      attributes: (this.dataset?.attributes ?? []).map((a) => ({
        name: a.name,
        kind: a.kind,
        discrete: a.discrete,
      })),
      encodingShelves: channels.map((channel) => {
        const binding = spec?.bindings.find((b) => b.channel === channel);
        return {
          channel,
          attribute: binding?.attribute ?? null,
          customized: binding?.palette?.customized ?? false,
        };
      }),
      filterWidgets: this.widgets,
      recommendations: this.recommendations.divisions.map((division) => ({
        division: division.name,
        items: division.recommendations.map((rec) => ({
          recId: rec.rec_id,
          explanation: rec.explanation,
          score: rec.score,
          state: rec.state,
        })),
      })),
    };
  }

  // gestures ---------------------------------------------------------------

  /** Feed a pointer/tool event through the interpreter and dispatch
   * whatever it produces. */
  async handleGesture(event: GestureEvent): Promise<GestureOutput[]> {
    const outputs = this.gestures.handle(event);
    for (const output of outputs) {
      if (output.kind === "request") {
        await this.sendRequest(output.request);
      } else if (output.kind === "demonstration") {
        await this.demonstrate(output.demonstration);
      } else if (output.kind === "rejected") {
        this.lastRejection = output.reason;
      }
    }
    this.changed();
    return outputs;
  }

  async sendRequest(request: UiRequest): Promise<void> {
    await this.api.send(this.sessionId, request);
    await this.refresh();
  }

  async demonstrate(demonstration: DemonstrationJson): Promise<void> {
    this.recommendations = await this.api.demonstrate(
      this.sessionId,
      demonstration,
    );
    await this.refresh();
  }

  // panel actions ----------------------------------------------------------

  async clickShowMe(target: VisTypeName): Promise<void> {
    await this.sendRequest(switchRequest(target));
  }

  async clickRemoveEncoding(channel: "color" | "size"): Promise<void> {
    await this.sendRequest(removeEncodingRequest(channel));
  }

  async clickSort(direction: "ascending" | "descending" | "none"): Promise<void> {
    await this.sendRequest(sortRequest(direction));
  }

  async toggleFilterValue(ruleId: string, value: Cell): Promise<void> {
    const widget = this.widgets.find((w) => w.rule_id === ruleId);
    if (widget === undefined) return;
    const request = toggleValueRequest(widget, value);
    if (request !== null) await this.sendRequest(request);
  }

  // recommendation lifecycle -------------------------------------------------

  async hoverRecommendation(recId: string): Promise<void> {
    this.previewView = await this.api.previewRecommendation(
      this.sessionId,
      recId,
    );
    this.changed();
  }

  unhoverRecommendation(): void {
    this.previewView = null;
    this.changed();
  }

  async acceptRecommendation(recId: string): Promise<void> {
    this.previewView = null;
    await this.api.acceptRecommendation(this.sessionId, recId);
    await this.refresh();
  }

  async rejectRecommendation(recId: string): Promise<void> {
    await this.api.rejectRecommendation(this.sessionId, recId);
    await this.refresh();
  }

  /** nth pending recommendation across divisions (1-based). */
  pendingByRank(rank: number): RecommendationItem | null {
    const flat = this.recommendations.divisions.flatMap((d) =>
      d.recommendations.filter((r) => r.state === "pending"),
    );
    const rec = flat[rank - 1];
    return rec === undefined
      ? null
      : {
          recId: rec.rec_id,
          explanation: rec.explanation,
          score: rec.score,
          state: rec.state,
        };
  }
}
