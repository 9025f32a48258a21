import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { GestureInterpreter, type GestureEvent, type GestureOutput } from "../src/gestures.js";
import { defaultLayout } from "../src/layout.js";
import { buildScene, type Scene } from "../src/scene.js";
import type {
  DatasetSummaryJson,
  ViewModelJson,
  VisTypeName,
  WidgetJson,
} from "../src/types.js";

const here = dirname(fileURLToPath(import.meta.url));
export const REPO_ROOT = join(here, "..", "..");

export interface Fixture {
  name: string;
  state: {
    vis_type: VisTypeName;
    dataset: DatasetSummaryJson;
    view: ViewModelJson;
    widgets: WidgetJson[];
  };
  events: GestureEvent[];
  golden: {
    demonstration?: unknown;
    request?: unknown;
    rejected?: boolean;
  };
}

export function loadFixture(name: string): Fixture {
  const raw = readFileSync(join(here, "fixtures", `${name}.json`), "utf-8");
  return JSON.parse(raw) as Fixture;
}

export function loadSchema(name: string): Record<string, unknown> {
  const raw = readFileSync(
    join(REPO_ROOT, "docs", "schemas", name),
    "utf-8",
  );
  return JSON.parse(raw) as Record<string, unknown>;
}

/** Run a fixture's recorded events through a fresh interpreter. */
export function runFixture(fixture: Fixture): GestureOutput[] {
  const layout = defaultLayout(1200, 800);
  const scene: Scene = buildScene(fixture.state.view, layout.view);
  const interpreter = new GestureInterpreter({
    layout,
    scene: () => scene,
    widgets: () => fixture.state.widgets,
    attributes: () => fixture.state.dataset.attributes,
    visType: () => fixture.state.vis_type,
  });
  const outputs: GestureOutput[] = [];
  for (const event of fixture.events) {
    outputs.push(...interpreter.handle(event));
  }
  return outputs;
}
