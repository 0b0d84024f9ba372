// Fetch interception harness: serves canned API payloads (captured from the
// real service) and records every request and every body it returned, so
// tests can assert rendered output is byte-traceable to response fields.

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

export function fixture(name: string): unknown {
  return JSON.parse(readFileSync(join(FIXTURES, name), "utf-8"));
}

export interface Route {
  match: (url: string, method: string) => boolean;
  body: (url: string) => unknown;
  status?: number;
}

export interface RecordedRequest {
  url: string;
  method: string;
}

export class MockBackend {
  requests: RecordedRequest[] = [];
  served: unknown[] = [];

  constructor(private routes: Route[]) {}

  fetch = async (input: RequestInfo | URL, init?: RequestInit): Promise<Response> => {
    const url = String(input);
    const method = init?.method ?? "GET";
    this.requests.push({ url, method });
    for (const route of this.routes) {
      if (route.match(url, method)) {
        const body = route.body(url);
        this.served.push(body);
        return new Response(JSON.stringify(body), {
          status: route.status ?? 200,
          headers: { "content-type": "application/json" },
        });
      }
    }
    const error = { code: "not_found", message: `no mock route for ${method} ${url}` };
    this.served.push(error);
    return new Response(JSON.stringify(error), { status: 404 });
  };

  requestsTo(fragment: string): RecordedRequest[] {
    return this.requests.filter((r) => r.url.includes(fragment));
  }
}

export function standardBackend(): MockBackend {
  const genericSeries = fixture("series_admissions.json");
  return new MockBackend([
    {
      match: (url) => url.includes("/dashboards/operations") && url.includes("department=cardiology"),
      body: () => fixture("dashboard_operations_cardiology.json"),
    },
    {
      match: (url) => url.includes("/dashboards/operations"),
      body: () => fixture("dashboard_operations.json"),
    },
    {
      match: (url) => url.includes("/dashboards/"),
      body: () => fixture("dashboard_finance.json"),
    },
    {
      match: (url) => url.includes("/series") && url.includes("ebitda_margin"),
      body: () => fixture("series_ebitda_margin.json"),
    },
    {
      match: (url) => url.includes("/series"),
      body: () => genericSeries,
    },
    {
      match: (url) =>
        url.includes("drilldown=doctor_id") && url.includes("department=cardiology"),
      body: () => fixture("drilldown_admissions_doctor_cardiology.json"),
    },
    {
      match: (url) => url.includes("drilldown="),
      body: () => fixture("drilldown_admissions_department.json"),
    },
    {
      match: (url, method) => method === "POST" && /\/alerts\/.+\/(acknowledge|resolve)/.test(url),
      body: () => {
        const alerts = fixture("alerts.json") as Array<Record<string, unknown>>;
        return { ...alerts[0], state: "acknowledged" };
      },
    },
    {
      match: (url) => url.endsWith("/alerts"),
      body: () => fixture("alerts.json"),
    },
  ]);
}

export function emptyStoreBackend(): MockBackend {
  return new MockBackend([
    {
      match: (url) => url.includes("/dashboards/"),
      body: () => fixture("dashboard_finance_empty.json"),
    },
    {
      match: (url) => url.includes("/series"),
      body: () => fixture("series_admissions_empty.json"),
    },
    {
      match: (url) => url.endsWith("/alerts"),
      body: () => fixture("alerts_empty.json"),
    },
  ]);
}

// every string/number leaf in the served payloads, stringified the way the
// renderer would print it verbatim
export function collectApiStrings(served: unknown[]): Set<string> {
  const out = new Set<string>();
  const walk = (node: unknown): void => {
    if (node === null || node === undefined) return;
    if (typeof node === "string") {
      out.add(node);
    } else if (typeof node === "number" || typeof node === "boolean") {
      out.add(String(node));
    } else if (Array.isArray(node)) {
      node.forEach(walk);
    } else if (typeof node === "object") {
      Object.values(node as Record<string, unknown>).forEach(walk);
    }
  };
  served.forEach(walk);
  return out;
}

export function flushAsync(times = 4): Promise<void> {
  let p = Promise.resolve();
  for (let i = 0; i < times; i++) {
    p = p.then(() => new Promise((resolve) => setTimeout(resolve, 0)));
  }
  return p;
}
