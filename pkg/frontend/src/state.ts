// View state: which dashboard is open, for which period, and how far the
// user has drilled. The whole state round-trips through the URL hash so
// every view is deep-linkable.

export type ViewName = "executive" | "quality" | "operations" | "finance";

export const VIEW_NAMES: ViewName[] = ["executive", "quality", "operations", "finance"];

export type Scope = "month" | "ytd";

export interface DrillStep {
  dimension: string;
  value: string;
}

export interface ViewState {
  view: ViewName;
  period: string; // YYYY-MM
  scope: Scope;
  drill: DrillStep[];
  alertsOpen: boolean;
}

const PERIOD_RE = /^\d{4}-(0[1-9]|1[0-2])$/;

export function isValidPeriod(period: string): boolean {
  return PERIOD_RE.test(period);
}

export function defaultState(): ViewState {
  return { view: "executive", period: "2015-03", scope: "month", drill: [], alertsOpen: false };
}

export function serializeState(state: ViewState): string {
  const params = new URLSearchParams();
  params.set("view", state.view);
  params.set("period", state.period);
  params.set("scope", state.scope);
  if (state.drill.length > 0) {
    params.set(
      "drill",
      state.drill
        .map((s) => `${encodeURIComponent(s.dimension)}:${encodeURIComponent(s.value)}`)
        .join("|"),
    );
  }
  if (state.alertsOpen) {
    params.set("alerts", "1");
  }
  return params.toString();
}

export function parseState(hash: string): ViewState {
  const fallback = defaultState();
  const params = new URLSearchParams(hash.replace(/^#/, ""));
  const view = params.get("view") ?? fallback.view;
  const period = params.get("period") ?? fallback.period;
  const scope = params.get("scope") ?? fallback.scope;
  const state: ViewState = {
    view: (VIEW_NAMES as string[]).includes(view) ? (view as ViewName) : fallback.view,
    period: isValidPeriod(period) ? period : fallback.period,
    scope: scope === "ytd" ? "ytd" : "month",
    drill: [],
    alertsOpen: params.get("alerts") === "1",
  };
  const drillRaw = params.get("drill");
  if (drillRaw) {
    for (const part of drillRaw.split("|")) {
      const idx = part.indexOf(":");
      if (idx <= 0) continue;
      const dimension = decodeURIComponent(part.slice(0, idx));
      const value = decodeURIComponent(part.slice(idx + 1));
      if (!state.drill.some((s) => s.dimension === dimension)) {
        state.drill.push({ dimension, value });
      }
    }
  }
  return state;
}

// drill steps use distinct dimensions: pushing an already-drilled dimension
// is a no-op rather than an error, matching a disabled control in the UI
export function pushDrill(state: ViewState, dimension: string, value: string): ViewState {
  if (state.drill.some((s) => s.dimension === dimension)) {
    return state;
  }
  return { ...state, drill: [...state.drill, { dimension, value }] };
}

export function popDrill(state: ViewState, toLength?: number): ViewState {
  const keep = toLength === undefined ? state.drill.length - 1 : toLength;
  return { ...state, drill: state.drill.slice(0, Math.max(0, keep)) };
}

export function shiftPeriod(period: string, deltaMonths: number): string {
  const [y, m] = period.split("-").map((x) => parseInt(x, 10));
  const total = y * 12 + (m - 1) + deltaMonths;
  const year = Math.floor(total / 12);
  const month = (total % 12) + 1;
  return `${String(year).padStart(4, "0")}-${String(month).padStart(2, "0")}`;
}
