/** Interaction controller: one in-flight move at a time, occupied-point
 * toasts, auto-pan to the bot's latest reply, and transcript replay.
 *
 * All game knowledge lives server-side; the controller only forwards
 * clicks (converted to world coordinates) and redraws payloads.
 */

import { ApiError, GameClient } from "./api.js";
import type { Draw2D } from "./render.js";
import { renderState } from "./render.js";
import { Viewport } from "./transform.js";
import type { GameState } from "./types.js";

export interface Toast {
  (message: string): void;
}

export class PlayController {
  private gameId: string | null = null;
  private inFlight = false;
  /** Every state payload rendered, in order (the replayable frame log). */
  readonly stateLog: GameState[] = [];

  constructor(
    private readonly client: GameClient,
    private readonly ctx: Draw2D,
    readonly view: Viewport,
    private readonly toast: Toast,
  ) {}

  get busy(): boolean {
    return this.inFlight;
  }

  async newGame(t?: number): Promise<void> {
    const { id, state } = await this.client.createGame(t);
    this.gameId = id;
    this.show(state);
  }

  /** Handle a board click at screen pixel coordinates. */
  async onClick(px: number, py: number): Promise<void> {
    if (this.gameId === null || this.inFlight) return;
    const w = this.view.screenToWorld({ x: px, y: py });
    this.inFlight = true;
    try {
      const res = await this.client.postMove(this.gameId, w.x, w.y);
      if (res.bot_reply) {
        this.view.ensureVisible({ x: res.bot_reply.x, y: res.bot_reply.y });
      }
      this.show(res.state);
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        this.toast(err.detail || "point already chosen");
      } else {
        this.toast(`move failed: ${err}`);
        throw err;
      }
    } finally {
      this.inFlight = false;
    }
  }

  /** Re-render the latest frame (after a pan/zoom), without side effects. */
  redraw(): void {
    const latest = this.stateLog[this.stateLog.length - 1];
    if (latest) renderState(this.ctx, this.view, latest);
  }

  /** Redraw a recorded sequence of payloads (spectator mode).
   *
   * Mirrors live play exactly, including the auto-pan to each bot
   * reply, so the final frame matches the live one. */
  replay(states: GameState[]): void {
    let seenP2 = 0;
    for (const s of states) {
      if (s.p2_points.length > seenP2) {
        const last = s.p2_points[s.p2_points.length - 1];
        this.view.ensureVisible({ x: last.x, y: last.y });
      }
      seenP2 = s.p2_points.length;
      this.show(s);
    }
  }

  private show(state: GameState): void {
    this.stateLog.push(state);
    renderState(this.ctx, this.view, state);
  }
}
