/** Pan/zoom viewport mapping world coordinates to screen pixels.
 *
 * Screen y grows downward, world y upward.  The transform is the only
 * place the mapping lives; every renderer and input handler goes
 * through it, so world coordinates round-trip exactly (well under the
 * 0.5 px contract).
 */

export interface Vec2 {
  x: number;
  y: number;
}

export class Viewport {
  /** Pixels per world unit. */
  scale: number;
  /** World coordinates of the screen center. */
  center: Vec2;
  width: number;
  height: number;

  constructor(width: number, height: number, worldSpan = 80) {
    this.width = width;
    this.height = height;
    this.scale = Math.min(width, height) / worldSpan;
    this.center = { x: 0, y: 0 };
  }

  worldToScreen(p: Vec2): Vec2 {
    return {
      x: this.width / 2 + (p.x - this.center.x) * this.scale,
      y: this.height / 2 - (p.y - this.center.y) * this.scale,
    };
  }

  screenToWorld(p: Vec2): Vec2 {
    return {
      x: this.center.x + (p.x - this.width / 2) / this.scale,
      y: this.center.y - (p.y - this.height / 2) / this.scale,
    };
  }

  /** Shift the view by a screen-space drag delta. */
  panBy(dxPx: number, dyPx: number): void {
    this.center = {
      x: this.center.x - dxPx / this.scale,
      y: this.center.y + dyPx / this.scale,
    };
  }

  /** Zoom by `factor`, keeping the world point under `anchorPx` fixed.
   * Scale is clamped: beyond these bounds the float cancellation in the
   * transform would exceed the 0.5 px round-trip contract. */
  zoomAt(anchorPx: Vec2, factor: number): void {
    const before = this.screenToWorld(anchorPx);
    this.scale = Math.min(500, Math.max(0.02, this.scale * factor));
    const after = this.screenToWorld(anchorPx);
    this.center = {
      x: this.center.x + (before.x - after.x),
      y: this.center.y + (before.y - after.y),
    };
  }

  /** Pan so that a world point is visible (used to follow the bot). */
  ensureVisible(p: Vec2, marginPx = 40): void {
    const s = this.worldToScreen(p);
    let dx = 0;
    let dy = 0;
    if (s.x < marginPx) dx = s.x - marginPx;
    if (s.x > this.width - marginPx) dx = s.x - (this.width - marginPx);
    if (s.y < marginPx) dy = s.y - marginPx;
    if (s.y > this.height - marginPx) dy = s.y - (this.height - marginPx);
    if (dx !== 0 || dy !== 0) this.panBy(-dx, -dy);
  }
}
