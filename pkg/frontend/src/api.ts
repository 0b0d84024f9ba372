// Thin typed client over the analytics service. The UI never computes KPI
// numbers itself; everything rendered comes out of these response bodies.

import type { DrillStep, Scope, ViewName } from "./state.js";

export interface ApiConfig {
  baseUrl: string; // "" = same origin
  token?: string;
}

export interface ValueFields {
  value: number | null;
  display: string;
  undefined_reason: string | null;
  numerator: number | null;
  denominator: number | null;
}

export interface GoalBlock {
  target: number;
  target_display: string;
  warn_band_pct: number;
  variance: number;
  variance_display: string;
  variance_pct: number | null;
  status: "on_track" | "at_risk" | "off_track";
  reason: string | null;
}

export interface Tile {
  kpi_id: string;
  display_name: string;
  unit: string;
  direction: string;
  category: string;
  dims: string[];
  month: ValueFields;
  ytd: ValueFields;
  goal: GoalBlock | null;
}

export interface AlertItem {
  alert_id: string;
  rule_id: string;
  kpi_id: string;
  kind: string;
  severity: string;
  state: string;
  period: string;
  observed_value: number | null;
  observed_display: string;
  reason: string | null;
}

export interface DashboardPayload {
  view: ViewName;
  title: string;
  period: { label: string; kind: string };
  filter: Record<string, string>;
  tiles: Tile[];
  alerts: AlertItem[];
  providers?: {
    doctors: Array<Record<string, unknown>>;
    hospital: Array<Record<string, unknown>>;
  };
}

export interface SeriesPoint extends ValueFields {
  period: string;
}

export interface SeriesPayload {
  kpi_id: string;
  unit: string;
  points: SeriesPoint[];
}

export interface DrilldownComponent extends ValueFields {
  key: string;
}

export interface DrilldownPayload {
  kpi_id: string;
  display_name: string;
  unit: string;
  dimension: string;
  additive: boolean;
  total: ValueFields;
  components: DrilldownComponent[];
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

const FILTER_PARAMS: Record<string, string> = {
  department: "department",
  doctor_id: "doctor",
  location: "location",
  drg_code: "drg",
  organ: "organ",
};

export function drillQuery(drill: DrillStep[]): URLSearchParams {
  const params = new URLSearchParams();
  for (const step of drill) {
    const name = FILTER_PARAMS[step.dimension];
    if (name) params.set(name, step.value);
  }
  return params;
}

export class ApiClient {
  constructor(
    private readonly config: ApiConfig,
    private readonly fetchFn: typeof fetch = (...args) => fetch(...args),
  ) {}

  private async request(path: string, init?: RequestInit): Promise<unknown> {
    const headers: Record<string, string> = {};
    if (this.config.token) {
      headers["Authorization"] = `Bearer ${this.config.token}`;
    }
    const response = await this.fetchFn(this.config.baseUrl + path, { ...init, headers });
    const body = await response.json().catch(() => null);
    if (!response.ok) {
      const code = (body as { code?: string })?.code ?? "error";
      const message = (body as { message?: string })?.message ?? response.statusText;
      throw new ApiError(response.status, code, message);
    }
    return body;
  }

  dashboard(view: ViewName, period: string, drill: DrillStep[]): Promise<DashboardPayload> {
    const params = drillQuery(drill);
    params.set("period", period);
    return this.request(`/dashboards/${view}?${params}`) as Promise<DashboardPayload>;
  }

  series(kpiId: string, from: string, to: string, drill: DrillStep[]): Promise<SeriesPayload> {
    const params = drillQuery(drill);
    params.set("from", from);
    params.set("to", to);
    return this.request(`/kpis/${kpiId}/series?${params}`) as Promise<SeriesPayload>;
  }

  drilldown(
    kpiId: string,
    period: string,
    scope: Scope,
    dimension: string,
    drill: DrillStep[],
  ): Promise<DrilldownPayload> {
    const params = drillQuery(drill);
    params.set("period", period);
    params.set("scope", scope);
    params.set("drilldown", dimension);
    return this.request(`/kpis/${kpiId}/value?${params}`) as Promise<DrilldownPayload>;
  }

  alerts(): Promise<AlertItem[]> {
    return this.request("/alerts") as Promise<AlertItem[]>;
  }

  alertAction(alertId: string, action: "acknowledge" | "resolve"): Promise<AlertItem> {
    return this.request(`/alerts/${alertId}/${action}`, { method: "POST" }) as Promise<AlertItem>;
  }
}
