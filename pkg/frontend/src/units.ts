/** Radians are canonical on the wire; the UI shows degrees only. */

export const RAD_TO_DEG = 180 / Math.PI;

export function radToDeg(value: number): number {
  return value * RAD_TO_DEG;
}

export function formatDegrees(value: number): string {
  return `${value.toFixed(1)}°`;
}
