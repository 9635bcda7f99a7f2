/** Browser bootstrap: wires the controller to a real canvas and fetch. */

import { GameClient } from "./api.js";
import { PlayController } from "./app.js";
import { Viewport } from "./transform.js";

const canvas = document.getElementById("board") as HTMLCanvasElement;
const toastEl = document.getElementById("toast") as HTMLDivElement;
const ctx = canvas.getContext("2d")!;

const view = new Viewport(canvas.width, canvas.height);
const client = new GameClient("", (url, init) =>
  fetch(url, init).then((r) => ({ status: r.status, json: () => r.json() })),
);

function toast(message: string): void {
  toastEl.textContent = message;
  toastEl.style.opacity = "1";
  setTimeout(() => (toastEl.style.opacity = "0"), 1500);
}

const controller = new PlayController(client, ctx, view, toast);

let dragging = false;
let moved = false;
let last = { x: 0, y: 0 };

canvas.addEventListener("mousedown", (e) => {
  dragging = true;
  moved = false;
  last = { x: e.offsetX, y: e.offsetY };
});
canvas.addEventListener("mousemove", (e) => {
  if (!dragging) return;
  const dx = e.offsetX - last.x;
  const dy = e.offsetY - last.y;
  if (Math.abs(dx) + Math.abs(dy) > 2) moved = true;
  view.panBy(dx, dy);
  last = { x: e.offsetX, y: e.offsetY };
  redraw();
});
canvas.addEventListener("mouseup", (e) => {
  dragging = false;
  if (!moved) void controller.onClick(e.offsetX, e.offsetY);
});
canvas.addEventListener("wheel", (e) => {
  e.preventDefault();
  view.zoomAt({ x: e.offsetX, y: e.offsetY }, e.deltaY < 0 ? 1.15 : 1 / 1.15);
  redraw();
});

function redraw(): void {
  controller.redraw();
}

void controller.newGame();
