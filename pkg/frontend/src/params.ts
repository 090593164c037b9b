/** Lamp parameters at the HTTP boundary: kelvin, degrees, pixels. */
export interface LampParams {
  kelvin: number;
  theta_hp_deg: number;
  z0: number;
  d_lamp: number;
  dx: number;
  dy: number;
}

export interface SliderRange {
  min: number;
  max: number;
  step: number;
}

/**
 * Slider ranges mirror the dataset sampling policy defaults: kelvin
 * spans the warm..cool union, the rest are the policy's physical
 * ranges. Offsets cover the long-tail disk radius.
 */
export const CONTROL_RANGES: Record<keyof LampParams, SliderRange> = {
  kelvin: { min: 2700, max: 8500, step: 10 },
  theta_hp_deg: { min: 15, max: 70, step: 1 },
  z0: { min: 800, max: 4000, step: 10 },
  d_lamp: { min: 200, max: 1600, step: 10 },
  dx: { min: -2400, max: 2400, step: 5 },
  dy: { min: -2400, max: 2400, step: 5 },
};

export const STRENGTH_RANGE: SliderRange = { min: 0, max: 2, step: 0.05 };
export const GAMMA_RANGE: SliderRange = { min: 0.2, max: 0.4, step: 0.01 };

export const DEFAULT_PARAMS: LampParams = {
  kelvin: 5000,
  theta_hp_deg: 45,
  z0: 2000,
  d_lamp: 400,
  dx: 0,
  dy: 0,
};

export interface ClampResult {
  value: number;
  clamped: boolean;
}

/** Clamp a manual entry into its slider range (never send out-of-range). */
export function clampToRange(value: number, range: SliderRange): ClampResult {
  if (Number.isNaN(value)) return { value: range.min, clamped: true };
  if (value < range.min) return { value: range.min, clamped: true };
  if (value > range.max) return { value: range.max, clamped: true };
  return { value, clamped: false };
}

export function clampParam(
  params: LampParams,
  name: keyof LampParams,
  value: number,
): { params: LampParams; clamped: boolean } {
  const { value: v, clamped } = clampToRange(value, CONTROL_RANGES[name]);
  return { params: { ...params, [name]: v }, clamped };
}

export function paramsEqual(a: LampParams, b: LampParams): boolean {
  return (
    a.kelvin === b.kelvin &&
    a.theta_hp_deg === b.theta_hp_deg &&
    a.z0 === b.z0 &&
    a.d_lamp === b.d_lamp &&
    a.dx === b.dx &&
    a.dy === b.dy
  );
}
