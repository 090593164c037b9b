/**
 * View composition: which image buffers the canvas should draw for the
 * current mode. Pure logic so the before/after/split semantics are
 * testable without a DOM.
 */
import type { StudioState } from "./studio.js";

export interface DrawPlan {
  /** Base image buffer to draw, or null if nothing is loaded yet. */
  base: Uint8Array | null;
  /** Split view only: the after frame, drawn left of the divider. */
  overlay: Uint8Array | null;
  /** Divider position as a fraction of the view width, if split. */
  splitFraction: number | null;
}

export function planView(state: StudioState): DrawPlan {
  switch (state.viewMode) {
    case "before":
      return { base: state.beforeImage, overlay: null, splitFraction: null };
    case "after":
      return { base: state.afterImage, overlay: null, splitFraction: null };
    case "residual":
      return { base: state.residualImage, overlay: null, splitFraction: null };
    case "split": {
      // the divider reveals the after frame from the left: at 0 the
      // view is identical to "before", at 1 identical to "after"
      if (state.splitFraction <= 0) {
        return { base: state.beforeImage, overlay: null, splitFraction: null };
      }
      if (state.splitFraction >= 1) {
        return { base: state.afterImage, overlay: null, splitFraction: null };
      }
      return {
        base: state.beforeImage,
        overlay: state.afterImage,
        splitFraction: state.splitFraction,
      };
    }
  }
}
