import { describe, expect, it } from "vitest";

import { Viewport } from "../src/transform.js";

function mulberry(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

describe("Viewport", () => {
  it("initial view spans 80 world units so retreat points stay visible", () => {
    const v = new Viewport(800, 600);
    expect(v.screenToWorld({ x: 400, y: 300 })).toEqual({ x: 0, y: 0 });
    // 30 world units up fits on screen (600 px / (600/80 px-per-unit) = 80)
    const s = v.worldToScreen({ x: 0, y: 35 });
    expect(s.y).toBeGreaterThan(0);
  });

  it("round-trips world coordinates to well under 0.5 px", () => {
    const rand = mulberry(7);
    const v = new Viewport(960, 720);
    for (let i = 0; i < 2000; i++) {
      if (i % 5 === 0) v.panBy(rand() * 200 - 100, rand() * 200 - 100);
      if (i % 7 === 0) v.zoomAt({ x: rand() * 960, y: rand() * 720 }, 0.5 + rand() * 1.5);
      const w = { x: rand() * 200 - 100, y: rand() * 200 - 100 };
      const back = v.screenToWorld(v.worldToScreen(w));
      const errPx = Math.hypot(back.x - w.x, back.y - w.y) * v.scale;
      expect(errPx).toBeLessThan(0.5);
    }
  });

  it("zoomAt keeps the anchor's world point fixed", () => {
    const v = new Viewport(960, 720);
    const anchor = { x: 200, y: 650 };
    const before = v.screenToWorld(anchor);
    v.zoomAt(anchor, 2.0);
    const after = v.screenToWorld(anchor);
    expect(Math.hypot(after.x - before.x, after.y - before.y)).toBeLessThan(1e-9);
    expect(v.scale).toBeCloseTo((Math.min(960, 720) / 80) * 2, 12);
  });

  it("panBy moves the view by the drag delta", () => {
    const v = new Viewport(960, 720);
    const wBefore = v.screenToWorld({ x: 100, y: 100 });
    v.panBy(50, -30);
    const wAfter = v.screenToWorld({ x: 150, y: 70 });
    expect(wAfter.x).toBeCloseTo(wBefore.x, 9);
    expect(wAfter.y).toBeCloseTo(wBefore.y, 9);
  });

  it("ensureVisible pans off-screen points into the margin", () => {
    const v = new Viewport(960, 720);
    const p = { x: 500, y: -400 };
    v.ensureVisible(p);
    const s = v.worldToScreen(p);
    expect(s.x).toBeGreaterThanOrEqual(39.5);
    expect(s.x).toBeLessThanOrEqual(960 - 39.5);
    expect(s.y).toBeGreaterThanOrEqual(39.5);
    expect(s.y).toBeLessThanOrEqual(720 - 39.5);
  });

  it("pan and zoom never mutate anything but the viewport", () => {
    const v = new Viewport(960, 720);
    const frozen = { width: v.width, height: v.height };
    v.panBy(10, 10);
    v.zoomAt({ x: 0, y: 0 }, 3);
    expect({ width: v.width, height: v.height }).toEqual(frozen);
  });
});
