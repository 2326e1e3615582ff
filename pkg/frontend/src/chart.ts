/** Objective-space scatter: the full front as context, the reduced
 * candidates emphasized and clickable, accumulated constraints as shaded
 * infeasible bands. Axes are degrees; values come straight from payloads. */

import type { AdaptResponse, Constraint, FrontPoint, FrontResponse } from "./api.js";
import { formatDegrees, radToDeg } from "./units.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface ScatterLayout {
  width: number;
  height: number;
  margin: number;
}

export const DEFAULT_LAYOUT: ScatterLayout = { width: 420, height: 320, margin: 42 };

/** True when a point violates any accumulated upper bound (radians). */
export function excludedByConstraints(
  objectives: number[],
  objectiveIds: string[],
  constraints: Constraint[]
): boolean {
  return constraints.some((c) => {
    const index = objectiveIds.indexOf(c.objective);
    return index >= 0 && objectives[index] > c.upper_bound;
  });
}

interface Scale {
  x(value: number): number;
  y(value: number): number;
  xMaxDeg: number;
  yMaxDeg: number;
}

function makeScale(front: FrontResponse, layout: ScatterLayout): Scale {
  const [neckId, armId] = front.objective_ids;
  const pad = 1.06;
  const xMaxDeg = Math.max(radToDeg(front.ranges[neckId][1]) * pad, 1);
  const yMaxDeg = Math.max(radToDeg(front.ranges[armId][1]) * pad, 1);
  const plotW = layout.width - 2 * layout.margin;
  const plotH = layout.height - 2 * layout.margin;
  return {
    x: (deg) => layout.margin + (deg / xMaxDeg) * plotW,
    y: (deg) => layout.height - layout.margin - (deg / yMaxDeg) * plotH,
    xMaxDeg,
    yMaxDeg,
  };
}

function el(tag: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  return node;
}

export class ObjectiveScatter {
  constructor(
    private root: HTMLElement,
    private onSelect: (candidateId: string) => void,
    private layout: ScatterLayout = DEFAULT_LAYOUT
  ) {}

  render(front: FrontResponse | null, latest: AdaptResponse | null): void {
    this.root.textContent = "";
    if (!front || front.candidates.length === 0) {
      const empty = document.createElement("p");
      empty.className = "empty-state";
      empty.textContent = "No front yet — run an adaptation round.";
      this.root.appendChild(empty);
      return;
    }
    const [neckId, armId] = front.objective_ids;
    const scale = makeScale(front, this.layout);
    const svg = el("svg", {
      viewBox: `0 0 ${this.layout.width} ${this.layout.height}`,
      width: String(this.layout.width),
      height: String(this.layout.height),
      class: "objective-scatter",
    });

    this.renderConstraintShade(svg, front, scale);
    this.renderAxes(svg, scale, neckId, armId);

    for (const point of front.candidates) {
      svg.appendChild(this.frontMarker(point, front, scale));
    }
    if (latest) {
      for (const candidate of latest.candidates) {
        svg.appendChild(this.candidateMarker(candidate, latest, scale, neckId, armId));
      }
    }
    this.root.appendChild(svg);
  }

  private renderConstraintShade(svg: SVGElement, front: FrontResponse, scale: Scale): void {
    const [neckId, armId] = front.objective_ids;
    const bottom = scale.y(0);
    const left = scale.x(0);
    for (const constraint of front.constraints) {
      const boundDeg = radToDeg(constraint.upper_bound);
      if (constraint.objective === neckId && boundDeg < scale.xMaxDeg) {
        svg.appendChild(
          el("rect", {
            class: "constraint-shade",
            "data-objective": constraint.objective,
            x: String(scale.x(boundDeg)),
            y: String(scale.y(scale.yMaxDeg)),
            width: String(Math.max(scale.x(scale.xMaxDeg) - scale.x(boundDeg), 0)),
            height: String(Math.max(bottom - scale.y(scale.yMaxDeg), 0)),
          })
        );
      } else if (constraint.objective === armId && boundDeg < scale.yMaxDeg) {
        svg.appendChild(
          el("rect", {
            class: "constraint-shade",
            "data-objective": constraint.objective,
            x: String(left),
            y: String(scale.y(scale.yMaxDeg)),
            width: String(Math.max(scale.x(scale.xMaxDeg) - left, 0)),
            height: String(Math.max(scale.y(boundDeg) - scale.y(scale.yMaxDeg), 0)),
          })
        );
      }
    }
  }

  private renderAxes(svg: SVGElement, scale: Scale, neckId: string, armId: string): void {
    const x0 = scale.x(0);
    const y0 = scale.y(0);
    svg.appendChild(
      el("line", { x1: String(x0), y1: String(y0), x2: String(scale.x(scale.xMaxDeg)), y2: String(y0), class: "axis" })
    );
    svg.appendChild(
      el("line", { x1: String(x0), y1: String(y0), x2: String(x0), y2: String(scale.y(scale.yMaxDeg)), class: "axis" })
    );
    const xLabel = el("text", { x: String(scale.x(scale.xMaxDeg / 2)), y: String(y0 + 30), class: "axis-label" });
    xLabel.textContent = `${neckId} (degrees)`;
    const yLabel = el("text", {
      x: String(x0 - 30),
      y: String(scale.y(scale.yMaxDeg / 2)),
      transform: `rotate(-90 ${x0 - 30} ${scale.y(scale.yMaxDeg / 2)})`,
      class: "axis-label",
    });
    yLabel.textContent = `${armId} (degrees)`;
    svg.appendChild(xLabel);
    svg.appendChild(yLabel);
  }

  private frontMarker(point: FrontPoint, front: FrontResponse, scale: Scale): SVGElement {
    const neckDeg = radToDeg(point.objectives[0]);
    const armDeg = radToDeg(point.objectives[1]);
    const marker = el("circle", {
      class: "front-point",
      cx: String(scale.x(neckDeg)),
      cy: String(scale.y(armDeg)),
      r: "2",
      "data-neck-deg": String(neckDeg),
      "data-arm-deg": String(armDeg),
    });
    const title = el("title", {});
    title.textContent = `${formatDegrees(neckDeg)} / ${formatDegrees(armDeg)}`;
    marker.appendChild(title);
    return marker;
  }

  private candidateMarker(
    candidate: AdaptResponse["candidates"][number],
    latest: AdaptResponse,
    scale: Scale,
    neckId: string,
    armId: string
  ): SVGElement {
    const neckDeg = candidate.objectives_degrees[neckId];
    const armDeg = candidate.objectives_degrees[armId];
    const isAutoPick = candidate.id === latest.auto_pick;
    const marker = el("circle", {
      class: `candidate${candidate.is_extreme ? " extreme" : ""}${isAutoPick ? " auto-pick" : ""}`,
      cx: String(scale.x(neckDeg)),
      cy: String(scale.y(armDeg)),
      r: isAutoPick ? "8" : "6",
      "data-id": candidate.id,
      "data-neck-deg": String(neckDeg),
      "data-arm-deg": String(armDeg),
    });
    const title = el("title", {});
    const mu = candidate.mu === null ? "∞" : candidate.mu.toFixed(3);
    title.textContent =
      `${candidate.id}: ${formatDegrees(neckDeg)} / ${formatDegrees(armDeg)} (μ=${mu})`;
    marker.appendChild(title);
    marker.addEventListener("click", () => this.onSelect(candidate.id));
    return marker;
  }
}
