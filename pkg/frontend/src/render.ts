// DOM builders. Every numeric shown to the user is a verbatim string from an
// API response field and is marked with data-api-value so the test suite can
// trace it back; the UI itself never computes KPI arithmetic. Chart geometry
// (sparkline coordinates, bar widths) is layout, not displayed text.

import type {
  AlertItem,
  DrilldownPayload,
  GoalBlock,
  SeriesPayload,
  Tile,
  ValueFields,
} from "./api.js";
import type { DrillStep } from "./state.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function apiNumber(text: string, className?: string): HTMLSpanElement {
  const span = el("span", className, text);
  span.setAttribute("data-api-value", "");
  return span;
}

function valueSpan(fields: ValueFields, className: string): HTMLSpanElement {
  if (fields.value === null) {
    const span = el("span", `${className} na`, "n/a");
    span.title = fields.undefined_reason ?? "no value";
    return span;
  }
  return apiNumber(fields.display, className);
}

export function goalStatusClass(goal: GoalBlock | null): string {
  return goal ? `goal-${goal.status}` : "";
}

export function renderSparkline(series: SeriesPayload): SVGSVGElement {
  const width = 120;
  const height = 28;
  const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("class", "sparkline");
  const defined = series.points.filter((p) => p.value !== null) as Array<{ value: number }>;
  if (defined.length === 0) {
    return svg;
  }
  const values = defined.map((p) => p.value);
  const min = Math.min(...values);
  const max = Math.max(...values);
  const spread = max - min || 1;
  const n = series.points.length;
  let segment: string[] = [];
  const flush = () => {
    if (segment.length >= 2) {
      const line = document.createElementNS("http://www.w3.org/2000/svg", "polyline");
      line.setAttribute("points", segment.join(" "));
      line.setAttribute("fill", "none");
      svg.appendChild(line);
    } else if (segment.length === 1) {
      const [x, y] = segment[0].split(",");
      const dot = document.createElementNS("http://www.w3.org/2000/svg", "circle");
      dot.setAttribute("cx", x);
      dot.setAttribute("cy", y);
      dot.setAttribute("r", "1.5");
      svg.appendChild(dot);
    }
    segment = [];
  };
  series.points.forEach((point, i) => {
    if (point.value === null) {
      flush();
      return;
    }
    const x = n === 1 ? width / 2 : (i / (n - 1)) * (width - 4) + 2;
    const y = height - 4 - ((point.value - min) / spread) * (height - 8);
    segment.push(`${x.toFixed(1)},${y.toFixed(1)}`);
  });
  flush();
  return svg;
}

export interface TileCallbacks {
  onFocus: (kpiId: string) => void;
}

export function renderTile(tile: Tile, callbacks: TileCallbacks): HTMLElement {
  const card = el("article", `tile ${goalStatusClass(tile.goal)}`.trim());
  card.setAttribute("data-kpi", tile.kpi_id);

  const head = el("header");
  head.appendChild(el("h3", "tile-name", tile.display_name));
  head.appendChild(el("span", "tile-unit", tile.unit));
  card.appendChild(head);

  const month = el("div", "tile-month");
  month.appendChild(valueSpan(tile.month, "tile-value"));
  card.appendChild(month);

  const ytd = el("div", "tile-ytd");
  ytd.appendChild(el("span", "label", "YTD "));
  ytd.appendChild(valueSpan(tile.ytd, "tile-ytd-value"));
  card.appendChild(ytd);

  if (tile.goal) {
    const goal = el("div", "tile-goal");
    goal.appendChild(el("span", "label", `${tile.goal.status.replace("_", " ")} · target `));
    goal.appendChild(apiNumber(tile.goal.target_display, "goal-target"));
    if (tile.goal.reason) goal.title = tile.goal.reason;
    card.appendChild(goal);
  }

  const sparkSlot = el("div", "tile-spark");
  sparkSlot.setAttribute("data-spark", tile.kpi_id);
  card.appendChild(sparkSlot);

  if (tile.dims.length > 0) {
    const button = el("button", "tile-drill", "drill down");
    button.addEventListener("click", () => callbacks.onFocus(tile.kpi_id));
    card.appendChild(button);
  }
  return card;
}

export function renderBreadcrumbs(
  drill: DrillStep[],
  onPop: (toLength: number) => void,
): HTMLElement {
  const nav = el("nav", "breadcrumbs");
  const home = el("button", "crumb", "all");
  home.addEventListener("click", () => onPop(0));
  nav.appendChild(home);
  drill.forEach((step, i) => {
    nav.appendChild(el("span", "crumb-sep", "›"));
    const crumb = el("button", "crumb", `${step.dimension}=${step.value}`);
    crumb.title = "click to drill back to this level";
    crumb.addEventListener("click", () => onPop(i + 1));
    nav.appendChild(crumb);
  });
  return nav;
}

export interface DrillChartCallbacks {
  onBar: (value: string) => void;
  onDimension: (dimension: string) => void;
  onClose: () => void;
}

export function renderDrillChart(
  payload: DrilldownPayload,
  dims: string[],
  callbacks: DrillChartCallbacks,
): HTMLElement {
  const panel = el("section", "drill-panel");
  const head = el("header");
  head.appendChild(el("h3", undefined, `${payload.display_name} by ${payload.dimension}`));
  const close = el("button", "drill-close", "close");
  close.addEventListener("click", callbacks.onClose);
  head.appendChild(close);
  panel.appendChild(head);

  if (dims.length > 1) {
    const switcher = el("div", "dim-switch");
    for (const dim of dims) {
      const button = el("button", dim === payload.dimension ? "dim active" : "dim", dim);
      button.disabled = dim === payload.dimension;
      button.addEventListener("click", () => callbacks.onDimension(dim));
      switcher.appendChild(button);
    }
    panel.appendChild(switcher);
  }

  const magnitudes = payload.components
    .filter((c) => c.value !== null)
    .map((c) => Math.abs(c.value as number));
  const maxMagnitude = magnitudes.length ? Math.max(...magnitudes) : 0;

  const list = el("div", "drill-bars");
  for (const component of payload.components) {
    const row = el("div", "drill-row");
    const label = el("button", "drill-key", component.key);
    label.addEventListener("click", () => callbacks.onBar(component.key));
    row.appendChild(label);
    const track = el("div", "bar-track");
    const bar = el("div", "bar");
    const share = component.value !== null && maxMagnitude > 0
      ? Math.abs(component.value) / maxMagnitude
      : 0;
    bar.style.width = `${(share * 100).toFixed(1)}%`;
    track.appendChild(bar);
    row.appendChild(track);
    row.appendChild(valueSpan(component, "drill-value"));
    list.appendChild(row);
  }
  panel.appendChild(list);

  const total = el("div", "drill-total");
  total.appendChild(el("span", "label", payload.additive ? "total (components sum to) " : "total "));
  total.appendChild(valueSpan(payload.total, "drill-total-value"));
  panel.appendChild(total);
  return panel;
}

export interface AlertCallbacks {
  onAction: (alertId: string, action: "acknowledge" | "resolve") => void;
}

export function renderAlertPanel(alerts: AlertItem[], callbacks: AlertCallbacks): HTMLElement {
  const panel = el("aside", "alert-panel");
  panel.appendChild(el("h3", undefined, "Alerts"));
  if (alerts.length === 0) {
    panel.appendChild(el("p", "alert-empty", "no open alerts"));
    return panel;
  }
  for (const alert of alerts) {
    const row = el("div", `alert alert-${alert.severity} alert-state-${alert.state}`);
    row.setAttribute("data-alert", alert.alert_id);
    const title = el("div", "alert-title");
    title.appendChild(el("span", "alert-sev", `[${alert.severity}] `));
    title.appendChild(el("span", "alert-kpi", alert.kpi_id));
    title.appendChild(el("span", "alert-obs", " observed "));
    title.appendChild(apiNumber(alert.observed_display, "alert-value"));
    row.appendChild(title);
    row.appendChild(el("div", "alert-reason", `${alert.state} · ${alert.reason ?? ""}`));
    const actions = el("div", "alert-actions");
    if (alert.state === "open" || alert.state === "escalated") {
      if (alert.state === "open") {
        const ack = el("button", undefined, "acknowledge");
        ack.addEventListener("click", () => callbacks.onAction(alert.alert_id, "acknowledge"));
        actions.appendChild(ack);
      }
      const resolve = el("button", undefined, "resolve");
      resolve.addEventListener("click", () => callbacks.onAction(alert.alert_id, "resolve"));
      actions.appendChild(resolve);
    } else if (alert.state === "acknowledged") {
      const resolve = el("button", undefined, "resolve");
      resolve.addEventListener("click", () => callbacks.onAction(alert.alert_id, "resolve"));
      actions.appendChild(resolve);
    }
    row.appendChild(actions);
    panel.appendChild(row);
  }
  return panel;
}

export function renderErrorState(message: string, onRetry: () => void): HTMLElement {
  const box = el("div", "error-state");
  box.appendChild(el("p", undefined, `service unreachable: ${message}`));
  const retry = el("button", "retry", "retry");
  retry.addEventListener("click", onRetry);
  box.appendChild(retry);
  return box;
}
