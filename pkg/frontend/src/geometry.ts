/** Polar map geometry, mirroring the service so click points can pre-fill
 * contact positions without a round trip. The service stays authoritative:
 * everything derived here is sent back through its endpoints. */

import type { PositionDoc, SectorConfigDoc } from "./types.js";

const TAU = 2 * Math.PI;

export function sectorIndex(cfg: SectorConfigDoc, sectorId: string): number {
  const idx = cfg.sectors.findIndex((s) => s.sector_id === sectorId);
  if (idx < 0) throw new Error(`unknown sector: ${sectorId}`);
  return idx;
}

/** Position -> canvas offsets from the map center (y grows downward). */
export function positionToCanvas(
  p: PositionDoc,
  cfg: SectorConfigDoc,
  canvasRadius: number,
): { x: number; y: number } {
  const wedge = TAU / cfg.sectors.length;
  const theta = (sectorIndex(cfg, p.sector_id) + p.angle_frac) * wedge;
  return {
    x: canvasRadius * p.radius * Math.sin(theta),
    y: -canvasRadius * p.radius * Math.cos(theta),
  };
}

/** Canvas offsets from the center -> position; null for the reserved origin
 * or points outside the plot disc. */
export function canvasToPosition(
  x: number,
  y: number,
  cfg: SectorConfigDoc,
  canvasRadius: number,
): PositionDoc | null {
  const r = Math.hypot(x, y) / canvasRadius;
  if (r === 0 || r > 1 + 1e-9) return null;
  const n = cfg.sectors.length;
  const wedge = TAU / n;
  const theta = (Math.atan2(x, -y) + TAU) % TAU;
  let t = theta / wedge;
  if (t >= n) t -= n;
  let idx = Math.floor(t);
  let frac = t - idx;
  if (frac >= 1 - 1e-9) {
    idx = (idx + 1) % n;
    frac = 0;
  }
  return {
    sector_id: cfg.sectors[idx].sector_id,
    radius: Math.min(r, 1),
    angle_frac: frac,
  };
}

/** Month snapping for time bar drags: dates move to the first of the month
 * they fall in (end dates to the first of the next month when past day 15). */
export function snapToMonth(iso: string, roundUp: boolean): string {
  const [y, m, d] = iso.split("-").map(Number);
  let year = y;
  let month = m;
  if (roundUp && d > 15) {
    month += 1;
    if (month > 12) {
      month = 1;
      year += 1;
    }
  }
  return `${String(year).padStart(4, "0")}-${String(month).padStart(2, "0")}-01`;
}

export function clampDate(iso: string, min: string, max: string): string {
  if (iso < min) return min;
  if (iso > max) return max;
  return iso;
}
