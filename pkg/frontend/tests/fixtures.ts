import type { PlanOut, PlanResponse, StopOut } from '../src/api';

export function makePlan(overrides: Partial<PlanOut> = {}): PlanOut {
  const base: PlanOut = {
    entry_stop: 's-0-0',
    exit_stop: 's-0-2',
    entry_stop_name: 'Stop 0-0',
    exit_stop_name: 'Stop 0-2',
    tt_lm_first_min: 3.0,
    tt_lm_last_min: 2.1,
    tt_pt_min: 8.0,
    travel_time_min: 13.1,
    transfers: 0,
    lm_first_km: 1.0,
    lm_last_km: 0.7,
    pt_ride_km: 2.0,
    pt_mode: 'bus',
    total_distance_km: 3.7,
    cost: 12.89,
    fare: { lm_first_rs: 25, lm_last_rs: 0, pt_rs: 5, total_rs: 30 },
    score: { convenience: 13.1, cost_effectiveness: 0.123, c_norm: 1.0, e_norm: 1.0, efficiency: 1.0 },
    legs: [
      {
        kind: 'lm',
        mode: 'walk_or_paratransit',
        from_lat: 28.6,
        from_lon: 77.2,
        to_lat: 28.6,
        to_lon: 77.21,
        distance_km: 1.0,
        time_min: 3.0,
      },
      {
        kind: 'pt',
        mode: 'bus',
        from_lat: 28.6,
        from_lon: 77.21,
        to_lat: 28.6,
        to_lon: 77.23,
        distance_km: 2.0,
        time_min: 8.0,
      },
      {
        kind: 'lm',
        mode: 'walk_or_paratransit',
        from_lat: 28.6,
        from_lon: 77.23,
        to_lat: 28.61,
        to_lon: 77.23,
        distance_km: 0.7,
        time_min: 2.1,
      },
    ],
  };
  return { ...base, ...overrides };
}

export function makeResponse(best: PlanOut, alternatives: PlanOut[] = []): PlanResponse {
  return {
    query: { max_fare: 60 },
    best,
    alternatives,
    n_feasible: 1 + alternatives.length,
  };
}

export const STOPS: StopOut[] = [
  { id: 's-0-0', name: 'Stop 0-0', lat: 28.6, lon: 77.2, mode: 'bus' },
  { id: 's-0-1', name: 'Stop 0-1', lat: 28.6, lon: 77.21, mode: 'metro' },
  { id: 's-1-0', name: 'Stop 1-0', lat: 28.609, lon: 77.2, mode: 'bus' },
];
