/**
 * Typed client for the planning HTTP API.
 *
 * The fetch implementation is injectable so tests can fake the wire.
 * The client owns newest-wins cancellation: issuing a plan request aborts
 * the one in flight, and a response that lost the race is reported as
 * aborted rather than delivered stale.
 */

export interface StopOut {
  id: string;
  name: string;
  lat: number;
  lon: number;
  mode: string;
}

export interface FareOut {
  lm_first_rs: number;
  lm_last_rs: number;
  pt_rs: number;
  total_rs: number;
}

export interface ScoreOut {
  convenience: number;
  cost_effectiveness: number;
  c_norm: number;
  e_norm: number;
  efficiency: number;
}

export interface LegOut {
  kind: 'lm' | 'pt';
  mode: string;
  from_lat: number;
  from_lon: number;
  to_lat: number;
  to_lon: number;
  distance_km: number;
  time_min: number;
}

export interface PlanOut {
  entry_stop: string;
  exit_stop: string;
  entry_stop_name: string;
  exit_stop_name: string;
  tt_lm_first_min: number;
  tt_lm_last_min: number;
  tt_pt_min: number;
  travel_time_min: number;
  transfers: number;
  lm_first_km: number;
  lm_last_km: number;
  pt_ride_km: number;
  pt_mode: string;
  total_distance_km: number;
  cost: number;
  fare: FareOut;
  score: ScoreOut;
  legs: LegOut[];
}

export interface PlanResponse {
  query: Record<string, unknown>;
  best: PlanOut;
  alternatives: PlanOut[];
  n_feasible: number;
}

export interface ApiError {
  code: string;
  message: string;
}

export interface PlanParams {
  from_lat: number;
  from_lon: number;
  to_lat: number;
  to_lon: number;
  max_fare: number;
  w_lm: number;
  lm_range_km: number;
  transfer_penalty_min: number;
  optimile: boolean;
  limit: number;
}

export type PlanResult =
  | { kind: 'ok'; response: PlanResponse }
  | { kind: 'error'; error: ApiError; status: number }
  | { kind: 'aborted' }
  | { kind: 'network'; message: string };

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export function planQueryString(params: PlanParams): string {
  const qs = new URLSearchParams();
  qs.set('from_lat', String(params.from_lat));
  qs.set('from_lon', String(params.from_lon));
  qs.set('to_lat', String(params.to_lat));
  qs.set('to_lon', String(params.to_lon));
  qs.set('max_fare', String(params.max_fare));
  qs.set('w_lm', String(params.w_lm));
  qs.set('lm_range_km', String(params.lm_range_km));
  qs.set('transfer_penalty_min', String(params.transfer_penalty_min));
  qs.set('optimile', params.optimile ? 'true' : 'false');
  qs.set('limit', String(params.limit));
  return qs.toString();
}

export class PlanClient {
  private inflight: AbortController | null = null;
  private seq = 0;

  constructor(
    private readonly baseUrl: string = '',
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  async stops(): Promise<StopOut[]> {
    const resp = await this.fetchFn(`${this.baseUrl}/network/stops`);
    if (!resp.ok) {
      throw new Error(`stop listing failed: HTTP ${resp.status}`);
    }
    return (await resp.json()) as StopOut[];
  }

  /** Issue a plan query, aborting whichever request was still in flight. */
  async plan(params: PlanParams): Promise<PlanResult> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    const ticket = ++this.seq;

    let resp: Response;
    try {
      resp = await this.fetchFn(`${this.baseUrl}/plan?${planQueryString(params)}`, {
        signal: controller.signal,
      });
    } catch (err) {
      if (controller.signal.aborted) {
        return { kind: 'aborted' };
      }
      return { kind: 'network', message: err instanceof Error ? err.message : String(err) };
    }
    if (ticket !== this.seq) {
      // A newer request raced past this one while it awaited the wire.
      return { kind: 'aborted' };
    }
    let body: unknown;
    try {
      body = await resp.json();
    } catch (err) {
      return { kind: 'network', message: `unparseable response: ${String(err)}` };
    }
    if (!resp.ok) {
      const error = (body as { error?: ApiError }).error ?? {
        code: 'UnknownError',
        message: `HTTP ${resp.status}`,
      };
      return { kind: 'error', error, status: resp.status };
    }
    return { kind: 'ok', response: body as PlanResponse };
  }
}
