/**
 * Browser bootstrap: wires the studio controller to the canvas, the
 * lamp-drag overlay, the parameter sliders, and the view-mode switch.
 * All state logic lives in studio.ts; this file only touches the DOM.
 */
import { FillightClient, fetchTransport } from "./api.js";
import { glyphDirection, overlayRadiusPx, sceneToView, ViewGeometry } from "./coords.js";
import { CONTROL_RANGES, GAMMA_RANGE, LampParams, STRENGTH_RANGE } from "./params.js";
import { Studio, StudioState, ViewMode } from "./studio.js";
import { planView } from "./views.js";

const BASE_URL =
  new URLSearchParams(location.search).get("api") ?? "http://127.0.0.1:8000";

const SLIDERS: Array<{ name: keyof LampParams; label: string }> = [
  { name: "kelvin", label: "Color temperature (K)" },
  { name: "theta_hp_deg", label: "Half-peak angle (deg)" },
  { name: "z0", label: "Distance (px)" },
  { name: "d_lamp", label: "Disk diameter (px)" },
];

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  parent?: HTMLElement,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  parent?.appendChild(node);
  return node;
}

function toast(message: string): void {
  const box = document.getElementById("toasts")!;
  const t = el("div", { class: "toast" }, box as HTMLElement);
  t.textContent = message;
  setTimeout(() => t.remove(), 4000);
}

async function blobUrl(bytes: Uint8Array): Promise<string> {
  return URL.createObjectURL(new Blob([bytes as BlobPart], { type: "image/png" }));
}

async function main(): Promise<void> {
  const client = new FillightClient(fetchTransport(BASE_URL));
  const canvas = document.getElementById("view") as HTMLCanvasElement;
  const ctx = canvas.getContext("2d")!;
  const readout = document.getElementById("readout")!;
  const overlay = document.getElementById("overlay") as HTMLCanvasElement;
  const octx = overlay.getContext("2d")!;

  const geometry: ViewGeometry = {
    viewWidth: canvas.width,
    viewHeight: canvas.height,
    sceneWidth: 1024,
    sceneHeight: 1024,
  };

  const render = async (state: StudioState) => {
    const plan = planView(state);
    if (plan.base) {
      const img = new Image();
      img.src = await blobUrl(plan.base);
      await img.decode();
      ctx.drawImage(img, 0, 0, canvas.width, canvas.height);
      if (plan.overlay && plan.splitFraction !== null) {
        const w = Math.round(canvas.width * plan.splitFraction);
        const after = new Image();
        after.src = await blobUrl(plan.overlay);
        await after.decode();
        ctx.drawImage(after, 0, 0, w, canvas.height, 0, 0, w, canvas.height);
        ctx.fillStyle = "#fff";
        ctx.fillRect(w - 1, 0, 2, canvas.height);
      }
    }
    drawOverlay(state);
    const p = state.displayedParams;
    readout.textContent = p
      ? `showing: T=${p.kelvin.toFixed(0)}K  θhp=${p.theta_hp_deg.toFixed(0)}°  ` +
        `Z0=${p.z0.toFixed(0)}px  D=${p.d_lamp.toFixed(0)}px  ` +
        `Δ=(${p.dx.toFixed(0)}, ${p.dy.toFixed(0)})px  ` +
        `[${state.lastRenderMs.toFixed(0)} ms]${state.pending ? " …" : ""}` +
        (state.lastClamped ? "  [entry clamped to range]" : "")
      : "no preview yet";
  };

  const drawOverlay = (state: StudioState) => {
    octx.clearRect(0, 0, overlay.width, overlay.height);
    const { dx, dy } = state.params;
    const pos = sceneToView(geometry, dx, dy);
    const r = Math.max(4, overlayRadiusPx(geometry, state.params.d_lamp, state.params.z0));
    octx.strokeStyle = "rgba(255, 220, 120, 0.9)";
    octx.lineWidth = 2;
    octx.beginPath();
    octx.arc(pos.x, pos.y, r, 0, 2 * Math.PI);
    octx.stroke();
    const dir = glyphDirection(dx, dy);
    octx.beginPath();
    octx.moveTo(pos.x, pos.y);
    octx.lineTo(pos.x + dir.x * r * 1.6, pos.y + dir.y * r * 1.6);
    octx.stroke();
  };

  const studio = new Studio(client, {
    onState: (s) => void render(s),
    onToast: toast,
  });

  // lamp dragging on the overlay canvas
  let dragging = false;
  overlay.addEventListener("pointerdown", (e) => {
    dragging = true;
    overlay.setPointerCapture(e.pointerId);
  });
  overlay.addEventListener("pointermove", (e) => {
    if (!dragging) return;
    const rect = overlay.getBoundingClientRect();
    studio.lampDrag(geometry, e.clientX - rect.left, e.clientY - rect.top);
  });
  overlay.addEventListener("pointerup", () => (dragging = false));

  // parameter sliders
  const controls = document.getElementById("controls")!;
  for (const { name, label } of SLIDERS) {
    const range = CONTROL_RANGES[name];
    const row = el("label", { class: "control" }, controls as HTMLElement);
    row.textContent = label;
    const slider = el("input", {
      type: "range",
      min: String(range.min),
      max: String(range.max),
      step: String(range.step),
      value: String(studio.state.params[name]),
    }, row);
    slider.addEventListener("input", () =>
      studio.setParam(name, Number(slider.value)));
  }
  const strengthRow = el("label", { class: "control" }, controls as HTMLElement);
  strengthRow.textContent = "Strength";
  const strength = el("input", {
    type: "range",
    min: String(STRENGTH_RANGE.min),
    max: String(STRENGTH_RANGE.max),
    step: String(STRENGTH_RANGE.step),
    value: "1",
  }, strengthRow);
  strength.addEventListener("input", () =>
    studio.setStrength(Number(strength.value)));

  const gammaRow = el("label", { class: "control" }, controls as HTMLElement);
  gammaRow.textContent = "Carrier γ preview (off)";
  const gamma = el("input", {
    type: "range",
    min: String(GAMMA_RANGE.min),
    max: String(GAMMA_RANGE.max),
    step: String(GAMMA_RANGE.step),
    value: "0.3",
  }, gammaRow);
  const gammaOn = el("input", { type: "checkbox" }, gammaRow);
  const applyGamma = () =>
    studio.setGammaPreview(gammaOn.checked ? Number(gamma.value) : null);
  gamma.addEventListener("input", applyGamma);
  gammaOn.addEventListener("change", applyGamma);

  // view modes + split divider
  for (const mode of ["after", "before", "split", "residual"] as ViewMode[]) {
    const btn = el("button", {}, document.getElementById("modes")!);
    btn.textContent = mode;
    btn.addEventListener("click", () => studio.setViewMode(mode));
  }
  const divider = el("input", {
    type: "range", min: "0", max: "1", step: "0.01", value: "0.5",
  }, document.getElementById("modes")!);
  divider.addEventListener("input", () =>
    studio.setSplitFraction(Number(divider.value)));

  const sceneId = new URLSearchParams(location.search).get("scene");
  if (sceneId) {
    await studio.loadScene(sceneId);
  } else {
    toast("append ?scene=<id> to the URL (register one via POST /scenes)");
  }
}

void main();
