/** Pure canvas rendering of a game-state payload.
 *
 * The renderer makes no geometry decisions: every marker, circle and
 * highlight comes straight from the server payload, so disabling any
 * overlay cannot change which moves are legal.
 */

import type { Viewport } from "./transform.js";
import type { CopyPayload, GameState } from "./types.js";
import { isGameState } from "./types.js";

/** The subset of CanvasRenderingContext2D the renderer uses; tests
 * inject a recording fake. */
export interface Draw2D {
  // write-only in this codebase, so the canvas union type is acceptable
  fillStyle: string | CanvasGradient | CanvasPattern;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  font: string;
  clearRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  fill(): void;
  stroke(): void;
  fillText(text: string, x: number, y: number): void;
}

export const COLORS = {
  background: "#111418",
  p1: "#e4572e",
  p2: "#3b8ea5",
  circle: "#3b8ea5",
  threatP1: "#ffd166",
  threatP2: "#8ac926",
  block: "#c0c0c0",
  text: "#e8e8e8",
};

const MARKER_PX = 5;

function drawMarker(ctx: Draw2D, view: Viewport, x: number, y: number, color: string): void {
  const s = view.worldToScreen({ x, y });
  ctx.fillStyle = color;
  ctx.beginPath();
  ctx.arc(s.x, s.y, MARKER_PX, 0, 2 * Math.PI);
  ctx.fill();
}

function drawCopy(ctx: Draw2D, view: Viewport, copy: CopyPayload, color: string): void {
  ctx.strokeStyle = color;
  ctx.lineWidth = 1.5;
  ctx.beginPath();
  for (const [x, y] of copy.points) {
    const s = view.worldToScreen({ x, y });
    ctx.moveTo(s.x + MARKER_PX + 2, s.y);
    ctx.arc(s.x, s.y, MARKER_PX + 2, 0, 2 * Math.PI);
  }
  ctx.stroke();
  const m = view.worldToScreen({ x: copy.missing[0], y: copy.missing[1] });
  ctx.strokeStyle = color;
  ctx.beginPath();
  ctx.moveTo(m.x - MARKER_PX, m.y - MARKER_PX);
  ctx.lineTo(m.x + MARKER_PX, m.y + MARKER_PX);
  ctx.moveTo(m.x - MARKER_PX, m.y + MARKER_PX);
  ctx.lineTo(m.x + MARKER_PX, m.y - MARKER_PX);
  ctx.stroke();
}

/** Render a schema-mismatch payload as an error panel with the raw body. */
export function renderError(ctx: Draw2D, view: Viewport, payload: unknown): void {
  ctx.clearRect(0, 0, view.width, view.height);
  ctx.fillStyle = COLORS.background;
  ctx.font = "14px monospace";
  ctx.fillStyle = COLORS.threatP1;
  ctx.fillText("unexpected state payload:", 10, 20);
  ctx.fillStyle = COLORS.text;
  ctx.fillText(JSON.stringify(payload), 10, 40);
}

export function renderState(ctx: Draw2D, view: Viewport, payload: unknown): void {
  if (!isGameState(payload)) {
    renderError(ctx, view, payload);
    return;
  }
  const state: GameState = payload;
  ctx.clearRect(0, 0, view.width, view.height);

  if (state.circle) {
    const c = view.worldToScreen({ x: state.circle.center[0], y: state.circle.center[1] });
    ctx.strokeStyle = COLORS.circle;
    ctx.lineWidth = 1;
    ctx.beginPath();
    ctx.arc(c.x, c.y, state.circle.radius * view.scale, 0, 2 * Math.PI);
    ctx.stroke();
  }

  if (state.last_block) drawCopy(ctx, view, state.last_block, COLORS.block);
  for (const th of state.threats.p1) drawCopy(ctx, view, th, COLORS.threatP1);
  for (const th of state.threats.p2) drawCopy(ctx, view, th, COLORS.threatP2);

  for (const p of state.p1_points) drawMarker(ctx, view, p.x, p.y, COLORS.p1);
  for (const p of state.p2_points) drawMarker(ctx, view, p.x, p.y, COLORS.p2);

  ctx.fillStyle = COLORS.text;
  ctx.font = "16px sans-serif";
  ctx.fillText(
    `${state.phase} — move ${state.move} — θ = ${state.theta.toFixed(6)} (t irrational)`,
    10,
    22,
  );
  if (state.p1_completed) {
    ctx.fillStyle = COLORS.threatP1;
    ctx.fillText("Player 1 completed a copy of G", 10, 44);
  }
}
