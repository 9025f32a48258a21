/** Browser bootstrap: bind the controller to real DOM panels. */

import { ApiClient } from "./api.js";
import { UiController } from "./controller.js";
import { defaultLayout } from "./layout.js";
import type { WidgetJson } from "./types.js";

const SWATCHES = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e"];

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  cls?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (cls) node.className = cls;
  if (text !== undefined) node.textContent = text;
  return node;
}

function widgetRow(controller: UiController, widget: WidgetJson): HTMLElement {
  const row = el("div", "widget");
  if (widget.kind === "checkbox") {
    row.append(el("span", "widget-label", String(widget.attribute)));
    for (let i = 0; i < widget.values.length; i++) {
      const label = el("label");
      const box = el("input") as HTMLInputElement;
      box.type = "checkbox";
      box.checked = widget.checked[i];
      const value = widget.values[i];
      box.addEventListener("change", () => {
        void controller.toggleFilterValue(widget.rule_id, value);
      });
      label.append(box, document.createTextNode(String(value)));
      row.append(label);
    }
  } else if (widget.kind === "range") {
    const mode = widget.mode === "exclude" ? "exclude" : "keep";
    row.append(
      el(
        "span",
        "widget-label",
        `${widget.attribute} ${mode} [${widget.selected[0]}, ${widget.selected[1]}]`,
      ),
    );
    // two native sliders stand in for a dual-handle control
    for (const handle of [0, 1] as const) {
      const slider = el("input") as HTMLInputElement;
      slider.type = "range";
      slider.min = String(widget.domain[0]);
      slider.max = String(widget.domain[1]);
      slider.step = "any";
      slider.value = String(widget.selected[handle]);
      slider.addEventListener("change", () => {
        const range: [number, number] = [...widget.selected];
        range[handle] = Number(slider.value);
        if (range[0] > range[1]) range[handle === 0 ? 1 : 0] = range[handle];
        void controller.sendRequest({
          method: "POST",
          path: "/ops/update_filter",
          body: { rule_id: widget.rule_id, range },
        });
      });
      row.append(slider);
    }
  } else {
    row.append(
      el("span", "widget-label", `${widget.excluded_count} points filtered out`),
    );
  }
  row.append(
    el("span", "widget-counts", `${widget.visible_count} pass / ${widget.excluded_count} fail`),
  );
  return row;
}

function renderPanels(controller: UiController): void {
  const panels = controller.panels();

  const menu = document.getElementById("show-me")!;
  menu.replaceChildren();
  for (const option of panels.showMe.options) {
    const button = el(
      "button",
      option === panels.showMe.active ? "active" : "",
      option.replace(/_/g, " "),
    );
    button.addEventListener("click", () => void controller.clickShowMe(option));
    menu.append(button);
  }

  const attrs = document.getElementById("attributes")!;
  attrs.replaceChildren();
  for (const attr of panels.attributes) {
    const chip = el("div", "chip", `${attr.name} (${attr.kind[0]})`);
    chip.draggable = false;
    attrs.append(chip);
  }

  const shelves = document.getElementById("shelves")!;
  shelves.replaceChildren();
  for (const shelf of panels.encodingShelves) {
    const holder = el("div", "shelf");
    const label = shelf.attribute
      ? `${shelf.attribute}${shelf.customized ? " (customized)" : ""}`
      : "drop here";
    holder.append(el("span", "shelf-name", shelf.channel), el("span", "", label));
    if (shelf.attribute && (shelf.channel === "color" || shelf.channel === "size")) {
      const remove = el("button", "remove", "x");
      const channel = shelf.channel;
      remove.addEventListener("click", () =>
        void controller.clickRemoveEncoding(channel),
      );
      holder.append(remove);
    }
    shelves.append(holder);
  }

  const filters = document.getElementById("filters")!;
  filters.replaceChildren();
  for (const widget of panels.filterWidgets) {
    filters.append(widgetRow(controller, widget));
  }

  const recs = document.getElementById("recommendations")!;
  recs.replaceChildren();
  for (const division of panels.recommendations) {
    recs.append(el("h3", "", division.division));
    for (const item of division.items) {
      if (item.state !== "pending") continue;
      const row = el("div", "rec", item.explanation);
      row.addEventListener("mouseenter", () =>
        void controller.hoverRecommendation(item.recId),
      );
      row.addEventListener("mouseleave", () => controller.unhoverRecommendation());
      const yes = el("button", "", "accept");
      yes.addEventListener("click", () =>
        void controller.acceptRecommendation(item.recId),
      );
      const no = el("button", "", "reject");
      no.addEventListener("click", () =>
        void controller.rejectRecommendation(item.recId),
      );
      row.append(yes, no);
      recs.append(row);
    }
  }

  const swatches = document.getElementById("swatches")!;
  swatches.replaceChildren();
  for (const color of SWATCHES) {
    const dot = el("button", "swatch");
    dot.style.background = color;
    dot.addEventListener("click", () =>
      void controller.handleGesture({ type: "swatch", color }),
    );
    swatches.append(dot);
  }
  const submit = el("button", "", "suggest");
  submit.addEventListener("click", () =>
    void controller.handleGesture({ type: "submit" }),
  );
  swatches.append(submit);

  document.getElementById("main-view")!.innerHTML = controller.renderedSvg();
}

async function start(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const api = new ApiClient(params.get("api") ?? "http://127.0.0.1:8878");
  const layout = defaultLayout(window.innerWidth, window.innerHeight);
  const controller = new UiController(api, layout);
  controller.onChange(() => renderPanels(controller));
  await controller.init({ dataset: params.get("dataset") ?? "cars.csv" });
  controller.connectEvents();

  const svgRoot = document.getElementById("stage")!;
  const toEvent = (e: PointerEvent) => ({ x: e.pageX, y: e.pageY });
  svgRoot.addEventListener("pointerdown", (e) =>
    void controller.handleGesture({
      type: "pointerdown",
      ...toEvent(e),
      shift: e.shiftKey,
    }),
  );
  svgRoot.addEventListener("pointermove", (e) =>
    void controller.handleGesture({ type: "pointermove", ...toEvent(e) }),
  );
  svgRoot.addEventListener("pointerup", (e) =>
    void controller.handleGesture({ type: "pointerup", ...toEvent(e) }),
  );
  document.getElementById("mode-select")!.addEventListener("click", () =>
    void controller.handleGesture({ type: "mode", mode: "select" }),
  );
  document.getElementById("mode-resize")!.addEventListener("click", () =>
    void controller.handleGesture({ type: "mode", mode: "resize" }),
  );
  renderPanels(controller);
}

void start();
