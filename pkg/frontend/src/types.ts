/** Payload shapes of the game HTTP API (the server owns all game logic). */

export interface PointPayload {
  x: number;
  y: number;
  on?: unknown;
}

export interface CopyPayload {
  owner: string;
  points: [number, number][];
  missing: [number, number];
}

export interface CirclePayload {
  id: string;
  center: [number, number];
  radius: number;
}

export interface GameState {
  id: string;
  move: number;
  phase: string;
  t: number;
  theta: number;
  p1_points: PointPayload[];
  p2_points: PointPayload[];
  circle: CirclePayload | null;
  threats: { p1: CopyPayload[]; p2: CopyPayload[] };
  last_block: CopyPayload | null;
  p1_completed: boolean;
  violations: string[];
}

export interface MoveResponse {
  bot_reply: PointPayload | null;
  state: GameState;
}

export function isGameState(v: unknown): v is GameState {
  if (typeof v !== "object" || v === null) return false;
  const s = v as Record<string, unknown>;
  return (
    typeof s.id === "string" &&
    typeof s.phase === "string" &&
    Array.isArray(s.p1_points) &&
    Array.isArray(s.p2_points) &&
    typeof s.threats === "object" &&
    s.threats !== null
  );
}
