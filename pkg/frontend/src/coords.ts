/**
 * Mapping between view coordinates (CSS pixels over the displayed
 * portrait) and the renderer's center-relative scene pixels, plus the
 * lamp-overlay geometry.
 */
export interface ViewGeometry {
  viewWidth: number; // displayed size, CSS px
  viewHeight: number;
  sceneWidth: number; // full-resolution scene extent, scene px
  sceneHeight: number;
}

/** View position -> center-relative scene offset (dx, dy). */
export function viewToScene(
  g: ViewGeometry,
  x: number,
  y: number,
): { dx: number; dy: number } {
  return {
    dx: (x / g.viewWidth - 0.5) * g.sceneWidth,
    dy: (y / g.viewHeight - 0.5) * g.sceneHeight,
  };
}

/** Center-relative scene offset -> view position. */
export function sceneToView(
  g: ViewGeometry,
  dx: number,
  dy: number,
): { x: number; y: number } {
  return {
    x: (dx / g.sceneWidth + 0.5) * g.viewWidth,
    y: (dy / g.sceneHeight + 0.5) * g.viewHeight,
  };
}

/**
 * Screen radius of the lamp-disk overlay: the disk (diameter d_lamp)
 * is foreshortened by its distance with a focal length of one scene
 * height, so nearer or larger lamps draw bigger circles.
 */
export function overlayRadiusPx(
  g: ViewGeometry,
  dLamp: number,
  z0: number,
): number {
  const focal = g.sceneHeight;
  const scenePx = (dLamp / 2) * (focal / (focal + z0));
  return (scenePx / g.sceneWidth) * g.viewWidth;
}

/** Unit glyph direction from the lamp overlay toward the image center. */
export function glyphDirection(dx: number, dy: number): { x: number; y: number } {
  const n = Math.hypot(dx, dy);
  if (n === 0) return { x: 0, y: 0 };
  return { x: -dx / n, y: -dy / n };
}
