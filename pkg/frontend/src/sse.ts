/**
 * Minimal server-sent-events reader over fetch streaming.
 *
 * Works in the browser and under node 20 (the browser EventSource is not
 * available in node, and fetch streaming is available in both).
 */

export interface ServerEvent {
  id: string | null;
  event: string;
  data: string;
}

export type EventHandler = (event: ServerEvent) => void;

export class EventStream {
  private controller = new AbortController();
  private handlers = new Map<string, EventHandler[]>();
  private anyHandlers: EventHandler[] = [];
  readonly done: Promise<void>;

  constructor(url: string, fetchImpl: typeof fetch = fetch) {
    this.done = this.run(url, fetchImpl);
  }

  on(eventType: string, handler: EventHandler): this {
    const list = this.handlers.get(eventType) ?? [];
    list.push(handler);
    this.handlers.set(eventType, list);
    return this;
  }

  onAny(handler: EventHandler): this {
    this.anyHandlers.push(handler);
    return this;
  }

  close(): void {
    this.controller.abort();
  }

  private dispatch(event: ServerEvent): void {
    for (const handler of this.handlers.get(event.event) ?? []) handler(event);
    for (const handler of this.anyHandlers) handler(event);
  }

  private async run(url: string, fetchImpl: typeof fetch): Promise<void> {
    let response: Response;
    try {
      response = await fetchImpl(url, {
        signal: this.controller.signal,
        headers: { accept: "text/event-stream" },
      });
    } catch {
      return; // aborted before connect
    }
    if (!response.ok || response.body === null) return;
    const reader = response.body.getReader();
    const decoder = new TextDecoder();
    let buffer = "";
    let current: { id: string | null; event: string; data: string[] } = {
      id: null,
      event: "message",
      data: [],
    };
    try {
      for (;;) {
        const { done, value } = await reader.read();
        if (done) break;
        buffer += decoder.decode(value, { stream: true });
        let newline;
        while ((newline = buffer.indexOf("\n")) >= 0) {
          const line = buffer.slice(0, newline).replace(/\r$/, "");
          buffer = buffer.slice(newline + 1);
          if (line === "") {
            if (current.data.length > 0 || current.event !== "message") {
              this.dispatch({
                id: current.id,
                event: current.event,
                data: current.data.join("\n"),
              });
            }
            current = { id: null, event: "message", data: [] };
          } else if (line.startsWith(":")) {
            continue; // comment / keep-alive
          } else {
            const colon = line.indexOf(":");
            const field = colon < 0 ? line : line.slice(0, colon);
            const value2 = colon < 0 ? "" : line.slice(colon + 1).trimStart();
            if (field === "event") current.event = value2;
            else if (field === "data") current.data.push(value2);
            else if (field === "id") current.id = value2;
          }
        }
      }
    } catch {
      // aborted mid-read
    }
  }
}
