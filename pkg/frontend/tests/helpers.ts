/** Shared test scaffolding: a fake fetch that replays the recorded service
 * flow (captured from the real HTTP service) and records the call sequence. */

import flow from "./fixtures/flow.json";

import { ApiClient, type FetchLike } from "../src/api.js";
import type { AppElements } from "../src/app.js";

export const fixture = flow;
export const SESSION_ID: string = flow.session_id;

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

export interface RecordedCall {
  method: string;
  path: string;
  body?: unknown;
}

export class FakeService {
  calls: RecordedCall[] = [];
  private adaptCount = 0;
  private frontCount = 0;

  fetch: FetchLike = async (url, init) => {
    const method = init?.method ?? "GET";
    const path = url.replace(/^https?:\/\/[^/]+/, "");
    const call: RecordedCall = { method, path };
    if (init?.body) call.body = JSON.parse(String(init.body));
    this.calls.push(call);

    if (method === "POST" && path === "/sessions") {
      return jsonResponse(flow.create, 201);
    }
    if (method === "POST" && path === `/sessions/${SESSION_ID}/adapt`) {
      this.adaptCount += 1;
      return jsonResponse(this.adaptCount === 1 ? flow.adapt1 : flow.adapt2);
    }
    if (method === "GET" && path === `/sessions/${SESSION_ID}/front`) {
      this.frontCount += 1;
      return jsonResponse(this.frontCount === 1 ? flow.front1 : flow.front2);
    }
    if (method === "POST" && path === `/sessions/${SESSION_ID}/select`) {
      return jsonResponse(flow.select);
    }
    if (method === "GET" && path === `/sessions/${SESSION_ID}`) {
      return jsonResponse(flow.session);
    }
    return jsonResponse({ code: "unknown_session", message: `no route ${path}` }, 404);
  };

  sequence(): string[] {
    return this.calls.map((c) => `${c.method} ${c.path}`);
  }
}

export function makeClient(service: FakeService): ApiClient {
  return new ApiClient("http://service.test", service.fetch);
}

export function makeElements(): AppElements {
  const make = () => document.createElement("div");
  return { scatter: make(), scene: make(), cards: make(), status: make() };
}
