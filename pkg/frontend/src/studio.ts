/**
 * The studio controller: a DOM-free state machine that owns the lamp
 * parameters, debounces preview requests while the user scrubs, keeps
 * at most one request in flight (latest wins, stale responses are
 * dropped), and tracks which parameters the displayed preview actually
 * reflects (the server's echo, never the in-progress controls).
 */
import { FillightClient } from "./api.js";
import { ServiceError } from "./api.js";
import { debounce, Debounced } from "./debounce.js";
import { LatestWins } from "./requests.js";
import {
  clampParam,
  clampToRange,
  DEFAULT_PARAMS,
  GAMMA_RANGE,
  LampParams,
  STRENGTH_RANGE,
} from "./params.js";
import { ViewGeometry, viewToScene } from "./coords.js";

export type ViewMode = "after" | "before" | "split" | "residual";

export const PREVIEW_DEBOUNCE_MS = 80;

export interface StudioState {
  sceneId: string | null;
  params: LampParams;
  strength: number;
  gammaPreview: number | null;
  viewMode: ViewMode;
  splitFraction: number;
  pending: boolean;
  lastClamped: boolean;
  /** Params echoed by the last applied preview; what the image shows. */
  displayedParams: LampParams | null;
  afterImage: Uint8Array | null;
  beforeImage: Uint8Array | null;
  residualImage: Uint8Array | null;
  lastRenderMs: number;
}

export interface StudioHooks {
  onState?: (state: StudioState) => void;
  onToast?: (message: string) => void;
}

export class Studio {
  readonly state: StudioState = {
    sceneId: null,
    params: { ...DEFAULT_PARAMS },
    strength: 1.0,
    gammaPreview: null,
    viewMode: "after",
    splitFraction: 0.5,
    pending: false,
    lastClamped: false,
    displayedParams: null,
    afterImage: null,
    beforeImage: null,
    residualImage: null,
    lastRenderMs: 0,
  };

  private readonly sequence = new LatestWins();
  private queued = false;
  private readonly schedule: Debounced<[]>;

  constructor(
    private readonly client: FillightClient,
    private readonly hooks: StudioHooks = {},
  ) {
    this.schedule = debounce(() => void this.issue(), PREVIEW_DEBOUNCE_MS);
  }

  private emit(): void {
    this.hooks.onState?.(this.state);
  }

  async loadScene(sceneId: string): Promise<void> {
    this.state.sceneId = sceneId;
    this.state.beforeImage = await this.client.getOriginal(sceneId);
    this.emit();
    this.requestPreview();
  }

  /** Lamp drag: the overlay follows instantly, the render is debounced. */
  lampDrag(g: ViewGeometry, viewX: number, viewY: number): void {
    const { dx, dy } = viewToScene(g, viewX, viewY);
    const a = clampParam(this.state.params, "dx", dx);
    const b = clampParam(a.params, "dy", dy);
    this.state.params = b.params;
    this.state.lastClamped = a.clamped || b.clamped;
    this.emit();
    this.requestPreview();
  }

  setParam(name: keyof LampParams, value: number): void {
    const { params, clamped } = clampParam(this.state.params, name, value);
    this.state.params = params;
    this.state.lastClamped = clamped;
    this.emit();
    this.requestPreview();
  }

  setStrength(value: number): void {
    const { value: v, clamped } = clampToRange(value, STRENGTH_RANGE);
    this.state.strength = v;
    this.state.lastClamped = clamped;
    this.emit();
    this.requestPreview();
  }

  setGammaPreview(value: number | null): void {
    if (value === null) {
      this.state.gammaPreview = null;
    } else {
      const { value: v, clamped } = clampToRange(value, GAMMA_RANGE);
      this.state.gammaPreview = v;
      this.state.lastClamped = clamped;
    }
    this.emit();
    this.requestPreview();
  }

  setViewMode(mode: ViewMode): void {
    this.state.viewMode = mode;
    this.emit();
    if (mode === "residual" && this.state.sceneId) this.requestPreview();
    // "before" needs no render: the original is already cached
  }

  setSplitFraction(f: number): void {
    this.state.splitFraction = Math.min(1, Math.max(0, f));
    this.emit();
  }

  /** Debounced entry point; at most one request per idle window. */
  requestPreview(): void {
    if (!this.state.sceneId) return;
    this.schedule();
  }

  /** Force the pending debounced request out immediately (tests, blur). */
  flush(): void {
    this.schedule.flush();
  }

  private async issue(): Promise<void> {
    if (this.sequence.inFlight) {
      this.queued = true; // exactly one in-flight preview at a time
      return;
    }
    const sceneId = this.state.sceneId;
    if (!sceneId) return;
    const id = this.sequence.nextId();
    const params = { ...this.state.params };
    const wantResidual = this.state.viewMode === "residual";
    this.state.pending = true;
    this.emit();
    try {
      if (wantResidual) {
        const bytes = await this.client.getResidual(sceneId, params, {
          strength: this.state.strength,
        });
        if (this.sequence.shouldApply(id)) {
          this.state.residualImage = bytes;
          this.state.displayedParams = params;
        }
      } else {
        const res = await this.client.renderPreview(sceneId, params, {
          strength: this.state.strength,
          gamma: this.state.gammaPreview ?? undefined,
        });
        if (this.sequence.shouldApply(id)) {
          this.state.afterImage = res.bytes;
          this.state.displayedParams = res.echoedParams;
          this.state.lastRenderMs = res.renderMs;
        }
      }
    } catch (err) {
      this.sequence.shouldApply(id); // settle the slot
      const msg = err instanceof ServiceError ? err.detail : String(err);
      this.hooks.onToast?.(msg);
    } finally {
      this.state.pending = this.sequence.inFlight;
      this.emit();
      if (this.queued) {
        this.queued = false;
        void this.issue();
      }
    }
  }
}
