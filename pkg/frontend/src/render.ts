/**
 * DOM and SVG builders for the map, the plan list, and the compare panel.
 *
 * Every renderer draws the server's numbers verbatim; the only arithmetic
 * here is coordinate projection and number formatting. Plans are never
 * re-scored or re-filtered client-side.
 */

import type { PlanOut, PlanResponse, StopOut } from './api';
import type { Pin, UiQueryState } from './state';

export type SortKey = 'efficiency' | 'fare' | 'time' | 'distance';

export interface SortState {
  key: SortKey;
  // Efficiency ranks high-to-low (higher is better); the cost-like
  // columns rank low-to-high.
}

const SORT_ACCESSORS: Record<SortKey, (p: PlanOut) => number> = {
  efficiency: (p) => p.score.efficiency,
  fare: (p) => p.fare.total_rs,
  time: (p) => p.travel_time_min,
  distance: (p) => p.total_distance_km,
};

export const SORT_LABELS: Record<SortKey, string> = {
  efficiency: 'Λ',
  fare: 'Fare (Rs)',
  time: 'Time (min)',
  distance: 'Distance (km)',
};

/** Stable sort; efficiency descends, everything else ascends. */
export function sortPlans(plans: PlanOut[], key: SortKey): PlanOut[] {
  const accessor = SORT_ACCESSORS[key];
  const sign = key === 'efficiency' ? -1 : 1;
  return plans
    .map((plan, i) => ({ plan, i }))
    .sort((a, b) => {
      const diff = accessor(a.plan) - accessor(b.plan);
      return diff !== 0 ? sign * diff : a.i - b.i;
    })
    .map((entry) => entry.plan);
}

export const fmtMin = (v: number): string => `${v.toFixed(1)} min`;
export const fmtKm = (v: number): string => `${v.toFixed(2)} km`;
export const fmtLambda = (v: number): string => v.toFixed(3);

// --- map -----------------------------------------------------------------

export interface Projection {
  x(lon: number): number;
  y(lat: number): number;
  /** Inverse mapping, for turning map clicks back into coordinates. */
  lonAt(x: number): number;
  latAt(y: number): number;
}

export const MAP_WIDTH = 640;
export const MAP_HEIGHT = 480;

/** Equirectangular fit of the stop extent into the SVG viewBox. */
export function makeProjection(
  stops: StopOut[],
  width = MAP_WIDTH,
  height = MAP_HEIGHT,
  padPx = 32,
): Projection {
  const lats = stops.map((s) => s.lat);
  const lons = stops.map((s) => s.lon);
  const minLat = Math.min(...lats);
  const maxLat = Math.max(...lats);
  const minLon = Math.min(...lons);
  const maxLon = Math.max(...lons);
  const midLat = (minLat + maxLat) / 2;
  const kx = Math.cos((midLat * Math.PI) / 180);
  const spanX = Math.max((maxLon - minLon) * kx, 1e-9);
  const spanY = Math.max(maxLat - minLat, 1e-9);
  const scale = Math.min((width - 2 * padPx) / spanX, (height - 2 * padPx) / spanY);
  const cx = width / 2;
  const cy = height / 2;
  const midLon = (minLon + maxLon) / 2;
  return {
    x: (lon) => cx + (lon - midLon) * kx * scale,
    y: (lat) => cy - (lat - midLat) * scale,
    lonAt: (x) => midLon + (x - cx) / (kx * scale),
    latAt: (y) => midLat - (y - cy) / scale,
  };
}

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS('http://www.w3.org/2000/svg', tag);
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, value);
  }
  return el;
}

function drawPin(svg: SVGSVGElement, proj: Projection, pin: Pin, cls: string, label: string) {
  const group = svgEl('g', { class: `pin ${cls}` });
  group.appendChild(
    svgEl('circle', { cx: String(proj.x(pin.lon)), cy: String(proj.y(pin.lat)), r: '7' }),
  );
  const text = svgEl('text', {
    x: String(proj.x(pin.lon)),
    y: String(proj.y(pin.lat) + 1.5),
    'text-anchor': 'middle',
    class: 'pin-label',
  });
  text.textContent = label;
  group.appendChild(text);
  svg.appendChild(group);
}

/**
 * Redraw the whole map: stops, the selected plan's legs (LM dashed, PT
 * solid, straight lines matching the engine's distance model), then pins.
 */
export function renderMap(
  svg: SVGSVGElement,
  stops: StopOut[],
  proj: Projection,
  state: UiQueryState,
  plan: PlanOut | null,
): void {
  svg.replaceChildren();
  svg.setAttribute('viewBox', `0 0 ${MAP_WIDTH} ${MAP_HEIGHT}`);

  for (const stop of stops) {
    const dot = svgEl('circle', {
      cx: String(proj.x(stop.lon)),
      cy: String(proj.y(stop.lat)),
      r: '3.5',
      class: `stop stop-${stop.mode}`,
      'data-stop-id': stop.id,
    });
    const title = svgEl('title', {});
    title.textContent = `${stop.name} (${stop.mode})`;
    dot.appendChild(title);
    svg.appendChild(dot);
  }

  if (plan) {
    for (const leg of plan.legs) {
      svg.appendChild(
        svgEl('line', {
          x1: String(proj.x(leg.from_lon)),
          y1: String(proj.y(leg.from_lat)),
          x2: String(proj.x(leg.to_lon)),
          y2: String(proj.y(leg.to_lat)),
          class: `leg leg-${leg.kind}`,
        }),
      );
    }
  }

  if (state.origin) {
    drawPin(svg, proj, state.origin, 'pin-origin', 'A');
  }
  if (state.destination) {
    drawPin(svg, proj, state.destination, 'pin-destination', 'B');
  }
}

// --- plan list -------------------------------------------------------------

function transfersBadge(plan: PlanOut): HTMLElement {
  const badge = document.createElement('span');
  badge.className = plan.transfers === 0 ? 'badge badge-direct' : 'badge';
  badge.dataset.transfers = String(plan.transfers);
  badge.textContent = plan.transfers === 0 ? 'direct' : `${plan.transfers} transfer(s)`;
  return badge;
}

function lambdaBar(value: number): HTMLElement {
  const wrap = document.createElement('div');
  wrap.className = 'lambda-bar';
  const fill = document.createElement('div');
  fill.className = 'lambda-fill';
  fill.style.width = `${(value * 100).toFixed(1)}%`;
  wrap.appendChild(fill);
  const num = document.createElement('span');
  num.className = 'lambda-value';
  num.textContent = fmtLambda(value);
  wrap.appendChild(num);
  return wrap;
}

function planCard(plan: PlanOut, highlight: boolean, index: number): HTMLElement {
  const card = document.createElement('article');
  card.className = highlight ? 'plan-card plan-best' : 'plan-card';
  card.dataset.index = String(index);

  const head = document.createElement('header');
  const route = document.createElement('strong');
  route.textContent = `${plan.entry_stop_name} → ${plan.exit_stop_name}`;
  head.appendChild(route);
  head.appendChild(transfersBadge(plan));
  card.appendChild(head);

  const stats = document.createElement('dl');
  const rows: Array<[string, string, string]> = [
    ['ride', plan.pt_mode, 'plan-mode'],
    ['time', fmtMin(plan.travel_time_min), 'plan-time'],
    ['distance', fmtKm(plan.total_distance_km), 'plan-distance'],
    ['fare', `Rs ${plan.fare.total_rs}`, 'plan-fare'],
  ];
  for (const [label, value, cls] of rows) {
    const dt = document.createElement('dt');
    dt.textContent = label;
    const dd = document.createElement('dd');
    dd.textContent = value;
    dd.className = cls;
    stats.appendChild(dt);
    stats.appendChild(dd);
  }
  card.appendChild(stats);

  const fare = plan.fare;
  const breakdown = document.createElement('p');
  breakdown.className = 'fare-breakdown';
  breakdown.textContent =
    `LM ${fare.lm_first_rs} + PT ${fare.pt_rs} + LM ${fare.lm_last_rs} = Rs ${fare.total_rs}`;
  card.appendChild(breakdown);

  card.appendChild(lambdaBar(plan.score.efficiency));
  return card;
}

/** Best plan first and highlighted, alternatives after it. */
export function renderPlanList(
  container: HTMLElement,
  response: PlanResponse,
  onSelect: (index: number) => void,
): void {
  container.replaceChildren();
  const plans = [response.best, ...response.alternatives];
  plans.forEach((plan, i) => {
    const card = planCard(plan, i === 0, i);
    card.addEventListener('click', () => onSelect(i));
    container.appendChild(card);
  });
  const count = document.createElement('p');
  count.className = 'feasible-count';
  count.textContent = `${response.n_feasible} feasible plan(s)`;
  container.appendChild(count);
}

// --- compare panel -----------------------------------------------------------

export function renderComparePanel(
  container: HTMLElement,
  plans: PlanOut[],
  sort: SortState,
  onSort: (key: SortKey) => void,
): void {
  container.replaceChildren();
  if (plans.length === 0) {
    return;
  }
  const table = document.createElement('table');
  table.className = 'compare-table';

  const head = document.createElement('tr');
  const routeTh = document.createElement('th');
  routeTh.textContent = 'Plan';
  head.appendChild(routeTh);
  for (const key of ['efficiency', 'fare', 'time', 'distance'] as SortKey[]) {
    const th = document.createElement('th');
    th.textContent = sort.key === key ? `${SORT_LABELS[key]} •` : SORT_LABELS[key];
    th.dataset.sortKey = key;
    th.addEventListener('click', () => onSort(key));
    head.appendChild(th);
  }
  table.appendChild(head);

  for (const plan of sortPlans(plans, sort.key)) {
    const tr = document.createElement('tr');
    const cells = [
      `${plan.entry_stop} → ${plan.exit_stop}`,
      fmtLambda(plan.score.efficiency),
      String(plan.fare.total_rs),
      plan.travel_time_min.toFixed(1),
      plan.total_distance_km.toFixed(2),
    ];
    for (const value of cells) {
      const td = document.createElement('td');
      td.textContent = value;
      tr.appendChild(td);
    }
    table.appendChild(tr);
  }
  container.appendChild(table);
}

// --- banners -----------------------------------------------------------------

/** Human phrasing per machine-readable error code. */
export const BANNER_TEXT: Record<string, string> = {
  FareInfeasible: 'No plan fits under the fare cap. Raise the max fare slider.',
  NoCandidateStops: 'No stop within first/last-mile range of a pin. Widen the LM range.',
  NoConnection: 'No transit connection between the candidate stops.',
  WeightConstraintViolated: 'LM weight must stay in (0, 0.5].',
  ValidationError: 'Query rejected: check the pin coordinates.',
};

export function renderBanner(
  container: HTMLElement,
  code: string,
  detail: string,
  onRetry?: () => void,
): void {
  container.replaceChildren();
  const banner = document.createElement('div');
  banner.className = 'banner';
  banner.dataset.code = code;
  const text = document.createElement('span');
  text.textContent = BANNER_TEXT[code] ?? detail;
  banner.appendChild(text);
  if (onRetry) {
    const button = document.createElement('button');
    button.textContent = 'Retry';
    button.className = 'retry';
    button.addEventListener('click', onRetry);
    banner.appendChild(button);
  }
  container.appendChild(banner);
}

export function clearBanner(container: HTMLElement): void {
  container.replaceChildren();
}
