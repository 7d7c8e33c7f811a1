/**
 * Query state behind the control panel.
 *
 * Slider values are clamped to the ranges the service accepts (w_lm in
 * (0, 0.5], fare and range positive), and the whole state round-trips
 * through the URL query string so a copied link reproduces the view.
 */

import type { PlanParams } from './api';

export interface Pin {
  lat: number;
  lon: number;
}

export interface UiQueryState {
  origin: Pin | null;
  destination: Pin | null;
  maxFareRs: number;
  wLm: number;
  lmRangeKm: number;
  transferPenaltyMin: number;
  optimile: boolean;
}

// Slider floors; the w_lm interval is open at 0 so the clamp lands on the
// smallest slider step instead.
export const W_LM_MIN = 0.05;
export const W_LM_MAX = 0.5;
export const PLAN_LIMIT = 5;

export const DEFAULT_STATE: UiQueryState = {
  origin: null,
  destination: null,
  maxFareRs: 60,
  wLm: 0.2,
  lmRangeKm: 5.0,
  transferPenaltyMin: 0,
  optimile: false,
};

function finiteOr(value: number, fallback: number): number {
  return Number.isFinite(value) ? value : fallback;
}

export function clampState(state: UiQueryState): UiQueryState {
  const fare = Math.round(finiteOr(state.maxFareRs, DEFAULT_STATE.maxFareRs));
  const wLm = finiteOr(state.wLm, DEFAULT_STATE.wLm);
  const range = finiteOr(state.lmRangeKm, DEFAULT_STATE.lmRangeKm);
  const penalty = finiteOr(state.transferPenaltyMin, DEFAULT_STATE.transferPenaltyMin);
  return {
    ...state,
    maxFareRs: Math.max(1, fare),
    wLm: Math.min(Math.max(wLm, W_LM_MIN), W_LM_MAX),
    lmRangeKm: Math.max(0.1, range),
    transferPenaltyMin: Math.max(0, penalty),
  };
}

/** Both pins placed; nothing can be submitted before that. */
export function canSubmit(state: UiQueryState): boolean {
  return state.origin !== null && state.destination !== null;
}

export function toPlanParams(state: UiQueryState): PlanParams {
  if (!state.origin || !state.destination) {
    throw new Error('both pins must be set before building a query');
  }
  return {
    from_lat: state.origin.lat,
    from_lon: state.origin.lon,
    to_lat: state.destination.lat,
    to_lon: state.destination.lon,
    max_fare: state.maxFareRs,
    w_lm: state.wLm,
    lm_range_km: state.lmRangeKm,
    transfer_penalty_min: state.transferPenaltyMin,
    optimile: state.optimile,
    limit: PLAN_LIMIT,
  };
}

/** Serialize into URL search params; Number -> string is exact in JS. */
export function stateToParams(state: UiQueryState): URLSearchParams {
  const params = new URLSearchParams();
  params.set('fare', String(state.maxFareRs));
  params.set('wlm', String(state.wLm));
  params.set('range', String(state.lmRangeKm));
  params.set('penalty', String(state.transferPenaltyMin));
  params.set('opti', state.optimile ? '1' : '0');
  if (state.origin) {
    params.set('olat', String(state.origin.lat));
    params.set('olon', String(state.origin.lon));
  }
  if (state.destination) {
    params.set('dlat', String(state.destination.lat));
    params.set('dlon', String(state.destination.lon));
  }
  return params;
}

function parsePin(params: URLSearchParams, latKey: string, lonKey: string): Pin | null {
  const lat = Number(params.get(latKey));
  const lon = Number(params.get(lonKey));
  if (!params.has(latKey) || !params.has(lonKey)) {
    return null;
  }
  if (!Number.isFinite(lat) || !Number.isFinite(lon)) {
    return null;
  }
  if (Math.abs(lat) > 90 || Math.abs(lon) > 180) {
    return null;
  }
  return { lat, lon };
}

export function stateFromParams(params: URLSearchParams): UiQueryState {
  const read = (key: string, fallback: number) =>
    params.has(key) ? finiteOr(Number(params.get(key)), fallback) : fallback;
  return clampState({
    origin: parsePin(params, 'olat', 'olon'),
    destination: parsePin(params, 'dlat', 'dlon'),
    maxFareRs: read('fare', DEFAULT_STATE.maxFareRs),
    wLm: read('wlm', DEFAULT_STATE.wLm),
    lmRangeKm: read('range', DEFAULT_STATE.lmRangeKm),
    transferPenaltyMin: read('penalty', DEFAULT_STATE.transferPenaltyMin),
    optimile: params.get('opti') === '1',
  });
}
