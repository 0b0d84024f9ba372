// Controller: owns the view state, talks to the API, and re-renders. Kept
// framework-free so tests can drive it directly with a mocked fetch.

import {
  ApiClient,
  type DashboardPayload,
  type DrilldownPayload,
  type Tile,
} from "./api.js";
import {
  renderAlertPanel,
  renderBreadcrumbs,
  renderDrillChart,
  renderErrorState,
  renderSparkline,
  renderTile,
} from "./render.js";
import {
  type ViewName,
  type ViewState,
  VIEW_NAMES,
  defaultState,
  isValidPeriod,
  parseState,
  popDrill,
  pushDrill,
  shiftPeriod,
} from "./state.js";

const SPARK_MONTHS_BACK = 5;

export interface AppOptions {
  onStateChange?: (state: ViewState) => void;
  sparklines?: boolean;
}

export class App {
  state: ViewState;
  private focusedKpi: string | null = null;
  private focusedDim: string | null = null;
  private lastDashboard: DashboardPayload | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
    private readonly options: AppOptions = {},
    initial?: ViewState,
  ) {
    this.state = initial ?? defaultState();
  }

  static fromUrl(root: HTMLElement, api: ApiClient, options: AppOptions = {}): App {
    return new App(root, api, options, parseState(window.location.hash));
  }

  private notify(): void {
    this.options.onStateChange?.(this.state);
  }

  // --- state transitions ---------------------------------------------------

  async setView(view: ViewName): Promise<void> {
    this.state = { ...this.state, view };
    this.focusedKpi = null;
    await this.load();
  }

  async setPeriod(period: string): Promise<void> {
    if (!isValidPeriod(period)) return;
    // drill path survives period changes
    this.state = { ...this.state, period };
    await this.load();
  }

  async stepPeriod(delta: number): Promise<void> {
    await this.setPeriod(shiftPeriod(this.state.period, delta));
  }

  async drill(dimension: string, value: string): Promise<void> {
    const next = pushDrill(this.state, dimension, value);
    if (next === this.state) return; // dimension already constrained
    this.state = next;
    await this.load();
  }

  async popBreadcrumb(toLength: number): Promise<void> {
    this.state = popDrill(this.state, toLength);
    await this.load();
  }

  async toggleAlerts(): Promise<void> {
    this.state = { ...this.state, alertsOpen: !this.state.alertsOpen };
    await this.load();
  }

  async focusKpi(kpiId: string, dimension?: string): Promise<void> {
    const tile = this.lastDashboard?.tiles.find((t) => t.kpi_id === kpiId);
    const available = this.availableDims(tile);
    this.focusedKpi = kpiId;
    this.focusedDim = dimension ?? available[0] ?? null;
    await this.load();
  }

  async closeDrillPanel(): Promise<void> {
    this.focusedKpi = null;
    this.focusedDim = null;
    await this.load();
  }

  async alertAction(alertId: string, action: "acknowledge" | "resolve"): Promise<void> {
    await this.api.alertAction(alertId, action);
    await this.load();
  }

  private availableDims(tile: Tile | undefined): string[] {
    if (!tile) return [];
    const used = new Set(this.state.drill.map((s) => s.dimension));
    return tile.dims.filter((d) => !used.has(d));
  }

  // --- loading / rendering ----------------------------------------------------

  async load(): Promise<void> {
    this.notify();
    let dashboard: DashboardPayload;
    try {
      dashboard = await this.api.dashboard(this.state.view, this.state.period, this.state.drill);
    } catch (err) {
      this.renderError(err instanceof Error ? err.message : String(err));
      return;
    }
    this.lastDashboard = dashboard;

    let drilldown: DrilldownPayload | null = null;
    if (this.focusedKpi && this.focusedDim) {
      try {
        drilldown = await this.api.drilldown(
          this.focusedKpi, this.state.period, this.state.scope,
          this.focusedDim, this.state.drill,
        );
      } catch {
        drilldown = null; // panel failure stays isolated from the view
      }
    }
    this.render(dashboard, drilldown);

    if (this.options.sparklines !== false) {
      void this.loadSparklines(dashboard);
    }
  }

  private async loadSparklines(dashboard: DashboardPayload): Promise<void> {
    const from = shiftPeriod(this.state.period, -SPARK_MONTHS_BACK);
    await Promise.all(dashboard.tiles.map(async (tile) => {
      const slot = this.root.querySelector(`[data-spark="${tile.kpi_id}"]`);
      if (!slot) return;
      try {
        const series = await this.api.series(tile.kpi_id, from, this.state.period, this.state.drill);
        slot.replaceChildren(renderSparkline(series));
      } catch {
        slot.replaceChildren(); // tile chart failure never breaks the view
      }
    }));
  }

  private renderError(message: string): void {
    this.root.replaceChildren(
      this.renderHeader(),
      renderErrorState(message, () => void this.load()),
    );
  }

  private renderHeader(): HTMLElement {
    const header = document.createElement("header");
    header.className = "topbar";

    const tabs = document.createElement("nav");
    tabs.className = "tabs";
    for (const view of VIEW_NAMES) {
      const tab = document.createElement("button");
      tab.textContent = view;
      tab.className = view === this.state.view ? "tab active" : "tab";
      tab.addEventListener("click", () => void this.setView(view));
      tabs.appendChild(tab);
    }
    header.appendChild(tabs);

    const controls = document.createElement("div");
    controls.className = "period-controls";
    const back = document.createElement("button");
    back.textContent = "◀";
    back.setAttribute("aria-label", "previous month");
    back.addEventListener("click", () => void this.stepPeriod(-1));
    const input = document.createElement("input");
    input.value = this.state.period;
    input.className = "period-input";
    input.addEventListener("change", () => void this.setPeriod(input.value));
    const forward = document.createElement("button");
    forward.textContent = "▶";
    forward.setAttribute("aria-label", "next month");
    forward.addEventListener("click", () => void this.stepPeriod(1));
    controls.append(back, input, forward);

    const alertsToggle = document.createElement("button");
    alertsToggle.className = "alerts-toggle";
    alertsToggle.textContent = this.state.alertsOpen ? "hide alerts" : "show alerts";
    alertsToggle.addEventListener("click", () => void this.toggleAlerts());
    controls.appendChild(alertsToggle);
    header.appendChild(controls);
    return header;
  }

  private render(dashboard: DashboardPayload, drilldown: DrilldownPayload | null): void {
    const children: HTMLElement[] = [this.renderHeader()];

    const title = document.createElement("h2");
    title.className = "view-title";
    title.textContent = `${dashboard.title} — ${dashboard.period.label}`;
    children.push(title);

    children.push(renderBreadcrumbs(this.state.drill, (n) => void this.popBreadcrumb(n)));

    if (drilldown && this.focusedKpi) {
      const tile = dashboard.tiles.find((t) => t.kpi_id === this.focusedKpi);
      children.push(renderDrillChart(drilldown, this.availableDims(tile), {
        onBar: (value) => void this.drill(drilldown.dimension, value),
        onDimension: (dim) => void this.focusKpi(drilldown.kpi_id, dim),
        onClose: () => void this.closeDrillPanel(),
      }));
    }

    const grid = document.createElement("main");
    grid.className = "tile-grid";
    for (const tile of dashboard.tiles) {
      grid.appendChild(renderTile(tile, {
        onFocus: (kpiId) => void this.focusKpi(kpiId),
      }));
    }
    children.push(grid);

    if (this.state.alertsOpen) {
      children.push(renderAlertPanel(dashboard.alerts, {
        onAction: (id, action) => void this.alertAction(id, action),
      }));
    }

    this.root.replaceChildren(...children);
  }
}
