/** Thin client for the game HTTP API; `fetch` is injectable for tests. */

import type { GameState, MoveResponse } from "./types.js";

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ status: number; json(): Promise<unknown> }>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

async function fail(res: { status: number; json(): Promise<unknown> }): Promise<never> {
  let detail = "";
  try {
    const body = (await res.json()) as { detail?: string };
    detail = body.detail ?? "";
  } catch {
    // non-JSON error body; status alone is enough
  }
  throw new ApiError(res.status, detail);
}

export class GameClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike,
  ) {}

  async createGame(t?: number): Promise<{ id: string; state: GameState }> {
    const res = await this.fetchImpl(`${this.baseUrl}/games`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(t === undefined ? {} : { t }),
    });
    if (res.status !== 201) return fail(res);
    return (await res.json()) as { id: string; state: GameState };
  }

  async postMove(gameId: string, x: number, y: number): Promise<MoveResponse> {
    const res = await this.fetchImpl(`${this.baseUrl}/games/${gameId}/move`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ x, y }),
    });
    if (res.status !== 200) return fail(res);
    return (await res.json()) as MoveResponse;
  }

  async getState(gameId: string): Promise<GameState> {
    const res = await this.fetchImpl(`${this.baseUrl}/games/${gameId}`);
    if (res.status !== 200) return fail(res);
    return (await res.json()) as GameState;
  }
}
