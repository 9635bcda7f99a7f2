/** Test doubles: a recording 2D context and a tiny in-memory game server.
 *
 * The fake server implements just enough of the HTTP contract to drive
 * the controller; it plays scripted bot replies, so tests stay free of
 * real game logic (which lives server-side in production too).
 */

import type { FetchLike } from "../src/api.js";
import type { Draw2D } from "../src/render.js";
import type { GameState, PointPayload } from "../src/types.js";

export class RecordingContext implements Draw2D {
  fillStyle = "";
  strokeStyle = "";
  lineWidth = 0;
  font = "";
  ops: unknown[][] = [];

  clearRect(...a: number[]): void {
    this.ops.push(["clearRect", ...a]);
  }
  beginPath(): void {
    this.ops.push(["beginPath"]);
  }
  arc(...a: number[]): void {
    this.ops.push(["arc", ...a]);
  }
  moveTo(...a: number[]): void {
    this.ops.push(["moveTo", ...a]);
  }
  lineTo(...a: number[]): void {
    this.ops.push(["lineTo", ...a]);
  }
  fill(): void {
    this.ops.push(["fill", this.fillStyle]);
  }
  stroke(): void {
    this.ops.push(["stroke", this.strokeStyle]);
  }
  fillText(text: string, x: number, y: number): void {
    this.ops.push(["fillText", text, x, y, this.fillStyle]);
  }
}

export function emptyState(id = "g1"): GameState {
  return {
    id,
    move: 0,
    phase: "Retreat",
    t: 0.08838834764831845,
    theta: 0.2777318463606913,
    p1_points: [],
    p2_points: [],
    circle: null,
    threats: { p1: [], p2: [] },
    last_block: null,
    p1_completed: false,
    violations: [],
  };
}

export interface ScriptedReply {
  reply: PointPayload;
  patch?: Partial<GameState>;
}

/** A stateful fake of the game service with scripted bot replies. */
export class FakeServer {
  state = emptyState();
  private moveCount = 0;

  constructor(private readonly script: ScriptedReply[]) {}

  fetch: FetchLike = async (url, init) => {
    const method = init?.method ?? "GET";
    if (method === "POST" && url.endsWith("/games")) {
      return { status: 201, json: async () => ({ id: this.state.id, state: this.state }) };
    }
    if (method === "POST" && url.endsWith("/move")) {
      const { x, y } = JSON.parse(init!.body!) as { x: number; y: number };
      const all = [...this.state.p1_points, ...this.state.p2_points];
      if (all.some((p) => Math.hypot(p.x - x, p.y - y) <= 1e-6)) {
        return { status: 409, json: async () => ({ detail: "point already chosen" }) };
      }
      const step = this.script[this.moveCount++];
      this.state = {
        ...this.state,
        move: this.state.move + 2,
        p1_points: [...this.state.p1_points, { x, y }],
        p2_points: [...this.state.p2_points, step.reply],
        ...step.patch,
      };
      return {
        status: 200,
        json: async () => ({ bot_reply: step.reply, state: this.state }),
      };
    }
    if (method === "GET") {
      return { status: 200, json: async () => this.state };
    }
    return { status: 404, json: async () => ({ detail: "unknown" }) };
  };
}
