/**
 * App entry: owns the query state, keeps the URL shareable, and re-queries
 * the planner service as the controls change.
 */

import { PlanClient, type PlanParams, type PlanResponse, type StopOut } from './api';
import { QUERY_DEBOUNCE_MS, debounce } from './debounce';
import {
  clearBanner,
  makeProjection,
  MAP_HEIGHT,
  MAP_WIDTH,
  renderBanner,
  renderComparePanel,
  renderMap,
  renderPlanList,
  type Projection,
  type SortKey,
} from './render';
import {
  canSubmit,
  clampState,
  stateFromParams,
  stateToParams,
  toPlanParams,
  type UiQueryState,
} from './state';

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el as T;
}

const mapSvg = byId<HTMLElement>('map') as unknown as SVGSVGElement;
const bannerEl = byId<HTMLElement>('banner');
const plansEl = byId<HTMLElement>('plans');
const compareEl = byId<HTMLElement>('compare');
const statusEl = byId<HTMLElement>('status');
const submitBtn = byId<HTMLButtonElement>('submit');
const clearBtn = byId<HTMLButtonElement>('clear');

const fareInput = byId<HTMLInputElement>('fare');
const wlmInput = byId<HTMLInputElement>('wlm');
const rangeInput = byId<HTMLInputElement>('range');
const penaltyInput = byId<HTMLInputElement>('penalty');
const optiInput = byId<HTMLInputElement>('opti');

const client = new PlanClient();

let state: UiQueryState = stateFromParams(new URLSearchParams(window.location.search));
let stops: StopOut[] = [];
let proj: Projection | null = null;
let lastResponse: PlanResponse | null = null;
let selectedIndex = 0;
let sortKey: SortKey = 'efficiency';

function syncControls(): void {
  fareInput.value = String(state.maxFareRs);
  wlmInput.value = String(state.wLm);
  rangeInput.value = String(state.lmRangeKm);
  penaltyInput.value = String(state.transferPenaltyMin);
  optiInput.checked = state.optimile;
  byId('fare-out').textContent = `Rs ${state.maxFareRs}`;
  byId('wlm-out').textContent = state.wLm.toFixed(2);
  byId('range-out').textContent = `${state.lmRangeKm.toFixed(1)} km`;
  byId('penalty-out').textContent = `${state.transferPenaltyMin.toFixed(0)} min`;
  submitBtn.disabled = !canSubmit(state);
  statusEl.textContent = !state.origin
    ? 'Click the map to drop the origin pin.'
    : !state.destination
      ? 'Click again to drop the destination pin.'
      : 'Drag the sliders; plans refresh automatically.';
}

function syncUrl(): void {
  const qs = stateToParams(state).toString();
  window.history.replaceState(null, '', qs ? `?${qs}` : window.location.pathname);
}

function redrawMap(): void {
  if (!proj) return;
  const plan = lastResponse
    ? [lastResponse.best, ...lastResponse.alternatives][selectedIndex] ?? lastResponse.best
    : null;
  renderMap(mapSvg, stops, proj, state, plan);
}

function renderResults(): void {
  if (!lastResponse) {
    plansEl.replaceChildren();
    compareEl.replaceChildren();
    redrawMap();
    return;
  }
  renderPlanList(plansEl, lastResponse, (i) => {
    selectedIndex = i;
    renderResults();
  });
  const cards = plansEl.querySelectorAll('.plan-card');
  cards[selectedIndex]?.classList.add('plan-selected');
  renderComparePanel(
    compareEl,
    [lastResponse.best, ...lastResponse.alternatives],
    { key: sortKey },
    (key) => {
      sortKey = key;
      renderResults();
    },
  );
  redrawMap();
}

async function requestPlan(): Promise<void> {
  if (!canSubmit(state)) return;
  let params: PlanParams;
  try {
    params = toPlanParams(state);
  } catch {
    return;
  }
  statusEl.textContent = 'Planning…';
  const result = await client.plan(params);
  if (result.kind === 'aborted') return;
  if (result.kind === 'network') {
    lastResponse = null;
    renderResults();
    renderBanner(bannerEl, 'NetworkError', result.message, () => void requestPlan());
    statusEl.textContent = 'Request failed.';
    return;
  }
  if (result.kind === 'error') {
    lastResponse = null;
    renderResults();
    renderBanner(bannerEl, result.error.code, result.error.message);
    statusEl.textContent = 'No plan.';
    return;
  }
  clearBanner(bannerEl);
  lastResponse = result.response;
  selectedIndex = 0;
  renderResults();
  statusEl.textContent = `${result.response.n_feasible} feasible plan(s).`;
}

const scheduleQuery = debounce(() => void requestPlan(), QUERY_DEBOUNCE_MS);

function stateChanged(immediate = false): void {
  state = clampState(state);
  syncControls();
  syncUrl();
  if (canSubmit(state)) {
    scheduleQuery();
    if (immediate) scheduleQuery.flush();
  }
}

function onMapClick(ev: MouseEvent): void {
  if (!proj) return;
  const rect = mapSvg.getBoundingClientRect();
  if (rect.width === 0 || rect.height === 0) return;
  const x = ((ev.clientX - rect.left) * MAP_WIDTH) / rect.width;
  const y = ((ev.clientY - rect.top) * MAP_HEIGHT) / rect.height;
  const pin = { lat: proj.latAt(y), lon: proj.lonAt(x) };
  if (!state.origin) {
    state = { ...state, origin: pin };
  } else if (!state.destination) {
    state = { ...state, destination: pin };
  } else {
    state = { ...state, origin: pin, destination: null };
    lastResponse = null;
    redrawMap();
  }
  stateChanged(true);
}

function bindSlider(input: HTMLInputElement, apply: (v: number) => UiQueryState): void {
  input.addEventListener('input', () => {
    state = apply(Number(input.value));
    stateChanged();
  });
}

async function boot(): Promise<void> {
  syncControls();
  try {
    stops = await client.stops();
  } catch (err) {
    renderBanner(bannerEl, 'NetworkError', String(err), () => void boot());
    return;
  }
  clearBanner(bannerEl);
  proj = makeProjection(stops);
  redrawMap();

  mapSvg.addEventListener('click', onMapClick);
  bindSlider(fareInput, (v) => ({ ...state, maxFareRs: v }));
  bindSlider(wlmInput, (v) => ({ ...state, wLm: v }));
  bindSlider(rangeInput, (v) => ({ ...state, lmRangeKm: v }));
  bindSlider(penaltyInput, (v) => ({ ...state, transferPenaltyMin: v }));
  optiInput.addEventListener('change', () => {
    state = { ...state, optimile: optiInput.checked };
    stateChanged(true);
  });
  submitBtn.addEventListener('click', () => {
    scheduleQuery();
    scheduleQuery.flush();
  });
  clearBtn.addEventListener('click', () => {
    state = { ...state, origin: null, destination: null };
    lastResponse = null;
    renderResults();
    stateChanged();
  });

  // A shared URL carries both pins; resolve it straight away.
  if (canSubmit(state)) {
    await requestPlan();
  }
}

void boot();
