/** Schematic side-profile of the user and the candidate placements.
 *
 * Sagittal projection: horizontal = z (forward, gaze direction), vertical =
 * y (up). Lateral offset from the shoulder (|x|) is encoded as marker size.
 * Previously selected placements render dimmed. */

import type { FrontPoint, ReducedCandidate, UserPose } from "./api.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface SceneLayout {
  width: number;
  height: number;
  margin: number;
}

export const DEFAULT_SCENE: SceneLayout = { width: 420, height: 320, margin: 30 };

export interface ProjectedMarker {
  px: number;
  py: number;
  radius: number;
}

interface Viewport {
  scale: number;
  originZ: number;
  originY: number;
  layout: SceneLayout;
}

export function makeViewport(pose: UserPose, layout: SceneLayout = DEFAULT_SCENE): Viewport {
  // Fit the reach sphere plus the head with some margin.
  const reach = pose.arm_length;
  const zMin = Math.min(pose.shoulder_position[2] - reach, pose.head_position[2]) - 0.15;
  const zMax = Math.max(pose.shoulder_position[2] + reach, pose.head_position[2]) + 0.15;
  const yMin = Math.min(pose.shoulder_position[1] - reach, 0) - 0.05;
  const yMax = Math.max(pose.shoulder_position[1] + reach, pose.head_position[1]) + 0.15;
  const scale = Math.min(
    (layout.width - 2 * layout.margin) / (zMax - zMin),
    (layout.height - 2 * layout.margin) / (yMax - yMin)
  );
  return { scale, originZ: zMin, originY: yMax, layout };
}

/** Project a world position (meters) to pixel coordinates plus a marker
 * radius encoding lateral offset from the sagittal plane of the shoulder. */
export function sagittalProject(
  pose: UserPose,
  position: number[],
  viewport: Viewport
): ProjectedMarker {
  const px = viewport.layout.margin + (position[2] - viewport.originZ) * viewport.scale;
  const py = viewport.layout.margin + (viewport.originY - position[1]) * viewport.scale;
  const lateral = Math.abs(position[0] - pose.shoulder_position[0]);
  return { px, py, radius: 3 + 10 * lateral };
}

function el(tag: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  return node;
}

export interface SceneCandidate {
  id: string;
  position: number[];
  reach_violation?: number;
  dimmed?: boolean;
}

export function sceneCandidatesFromRound(
  candidates: ReducedCandidate[],
  front: FrontPoint[]
): SceneCandidate[] {
  const byPosition = new Map(front.map((p) => [p.position.join(","), p]));
  return candidates.map((c) => ({
    id: c.id,
    position: c.position,
    reach_violation: byPosition.get(c.position.join(","))?.reach_violation,
  }));
}

export class SceneView {
  constructor(private root: HTMLElement, private layout: SceneLayout = DEFAULT_SCENE) {}

  render(pose: UserPose, candidates: SceneCandidate[], history: SceneCandidate[] = []): void {
    this.root.textContent = "";
    const viewport = makeViewport(pose, this.layout);
    const svg = el("svg", {
      viewBox: `0 0 ${this.layout.width} ${this.layout.height}`,
      width: String(this.layout.width),
      height: String(this.layout.height),
      class: "scene-view",
    });

    const shoulder = sagittalProject(pose, pose.shoulder_position, viewport);
    const head = sagittalProject(pose, pose.head_position, viewport);

    // Reach disc (the sphere's sagittal cross-section).
    svg.appendChild(
      el("circle", {
        class: "reach-arc",
        cx: String(shoulder.px),
        cy: String(shoulder.py),
        r: String(pose.arm_length * viewport.scale),
      })
    );
    // Gaze ray from the head.
    const gazeEnd = sagittalProject(
      pose,
      [
        pose.head_position[0] + pose.gaze_forward[0],
        pose.head_position[1] + pose.gaze_forward[1],
        pose.head_position[2] + pose.gaze_forward[2],
      ],
      viewport
    );
    svg.appendChild(
      el("line", {
        class: "gaze-ray",
        x1: String(head.px),
        y1: String(head.py),
        x2: String(gazeEnd.px),
        y2: String(gazeEnd.py),
      })
    );
    // Torso: head to shoulder.
    svg.appendChild(
      el("line", {
        class: "torso",
        x1: String(head.px),
        y1: String(head.py),
        x2: String(shoulder.px),
        y2: String(shoulder.py),
      })
    );
    svg.appendChild(
      el("circle", { class: "head", cx: String(head.px), cy: String(head.py), r: "10" })
    );
    svg.appendChild(
      el("circle", { class: "shoulder", cx: String(shoulder.px), cy: String(shoulder.py), r: "4" })
    );

    for (const item of history) {
      svg.appendChild(this.marker(pose, item, viewport, true));
    }
    for (const item of candidates) {
      svg.appendChild(this.marker(pose, item, viewport, Boolean(item.dimmed)));
    }
    this.root.appendChild(svg);
  }

  private marker(
    pose: UserPose,
    item: SceneCandidate,
    viewport: Viewport,
    dimmed: boolean
  ): SVGElement {
    const projected = sagittalProject(pose, item.position, viewport);
    const infeasible = (item.reach_violation ?? 0) > 0;
    const marker = el("circle", {
      class: `placement${dimmed ? " dimmed" : ""}${infeasible ? " error-badge" : ""}`,
      cx: String(projected.px),
      cy: String(projected.py),
      r: String(projected.radius),
      "data-id": item.id,
    });
    const title = el("title", {});
    title.textContent = `${item.id} @ (${item.position.map((v) => v.toFixed(3)).join(", ")})`;
    marker.appendChild(title);
    return marker;
  }
}
