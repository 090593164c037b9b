/**
 * Thin client for the preview service REST API. The transport is
 * injectable so tests can stand in for the network.
 */
import type { LampParams } from "./params.js";

export type Quality = "preview" | "full";

export interface TransportRequest {
  method: "GET" | "POST";
  path: string;
  query?: Record<string, string>;
  body?: unknown; // JSON-serializable
}

export interface TransportResponse {
  status: number;
  headers: Record<string, string>;
  bytes: Uint8Array;
}

export type Transport = (req: TransportRequest) => Promise<TransportResponse>;

export interface PreviewResult {
  bytes: Uint8Array;
  echoedParams: LampParams;
  renderMs: number;
}

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`service ${status}: ${detail}`);
  }
}

function parseEcho(headers: Record<string, string>): { params: LampParams } {
  const raw = headers["x-params"] ?? headers["X-Params"];
  const doc = JSON.parse(raw);
  return { params: doc.params as LampParams };
}

async function errorDetail(r: TransportResponse): Promise<string> {
  try {
    const doc = JSON.parse(new TextDecoder().decode(r.bytes));
    if (Array.isArray(doc.detail)) {
      return doc.detail
        .map((d: { loc?: unknown[]; msg?: string }) =>
          `${(d.loc ?? []).join(".")}: ${d.msg ?? ""}`)
        .join("; ");
    }
    return String(doc.detail ?? "unknown error");
  } catch {
    return "unknown error";
  }
}

export function fetchTransport(baseUrl: string): Transport {
  return async (req) => {
    const url = new URL(req.path, baseUrl);
    for (const [k, v] of Object.entries(req.query ?? {})) {
      url.searchParams.set(k, v);
    }
    const res = await fetch(url, {
      method: req.method,
      headers: req.body !== undefined ? { "content-type": "application/json" } : {},
      body: req.body !== undefined ? JSON.stringify(req.body) : undefined,
    });
    const headers: Record<string, string> = {};
    res.headers.forEach((v, k) => (headers[k.toLowerCase()] = v));
    return {
      status: res.status,
      headers,
      bytes: new Uint8Array(await res.arrayBuffer()),
    };
  };
}

export class FillightClient {
  constructor(private readonly transport: Transport) {}

  async renderPreview(
    sceneId: string,
    params: LampParams,
    opts: { quality?: Quality; strength?: number; gamma?: number } = {},
  ): Promise<PreviewResult> {
    const r = await this.transport({
      method: "POST",
      path: `/scenes/${sceneId}/render`,
      body: {
        params,
        quality: opts.quality ?? "preview",
        strength: opts.strength ?? 1.0,
        gamma: opts.gamma ?? null,
      },
    });
    if (r.status !== 200) throw new ServiceError(r.status, await errorDetail(r));
    return {
      bytes: r.bytes,
      echoedParams: parseEcho(r.headers).params,
      renderMs: Number(r.headers["x-render-ms"] ?? "0"),
    };
  }

  async getOriginal(sceneId: string, quality: Quality = "preview"): Promise<Uint8Array> {
    const r = await this.transport({
      method: "GET",
      path: `/scenes/${sceneId}/original`,
      query: { quality },
    });
    if (r.status !== 200) throw new ServiceError(r.status, await errorDetail(r));
    return r.bytes;
  }

  async getResidual(
    sceneId: string,
    params: LampParams,
    opts: { quality?: Quality; strength?: number } = {},
  ): Promise<Uint8Array> {
    const r = await this.transport({
      method: "GET",
      path: `/scenes/${sceneId}/residual`,
      query: {
        kelvin: String(params.kelvin),
        theta_hp_deg: String(params.theta_hp_deg),
        z0: String(params.z0),
        d_lamp: String(params.d_lamp),
        dx: String(params.dx),
        dy: String(params.dy),
        quality: opts.quality ?? "preview",
        strength: String(opts.strength ?? 1.0),
        fmt: "png",
      },
    });
    if (r.status !== 200) throw new ServiceError(r.status, await errorDetail(r));
    return r.bytes;
  }
}
