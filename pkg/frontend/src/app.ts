/** View state and the elicitation loop controller.
 *
 * The controller is a pure orchestrator over service payloads: it never
 * recomputes objectives or scores, only renders what the service returned
 * and maps user actions onto the documented endpoints. */

import {
  ApiClient,
  ApiError,
  type AdaptResponse,
  type FrontResponse,
  type SessionConfig,
  type UserPose,
} from "./api.js";
import { ObjectiveScatter } from "./chart.js";
import { SceneView, sceneCandidatesFromRound, type SceneCandidate } from "./scene.js";
import type { ProgressEvent } from "./sse.js";
import { formatDegrees } from "./units.js";

export interface SelectionRecord {
  round: number;
  candidateId: string;
  position: number[];
}

export interface ViewState {
  sessionId: string | null;
  latest: AdaptResponse | null;
  front: FrontResponse | null;
  history: SelectionRecord[];
  lastGeneration: number;
  busy: boolean;
}

export interface AppElements {
  scatter: HTMLElement;
  scene: HTMLElement;
  cards: HTMLElement;
  status: HTMLElement;
}

export class ElicitationController {
  readonly state: ViewState = {
    sessionId: null,
    latest: null,
    front: null,
    history: [],
    lastGeneration: -1,
    busy: false,
  };

  private scatter: ObjectiveScatter;
  private scene: SceneView;
  private pose: UserPose | null = null;

  constructor(private api: ApiClient, private elements: AppElements) {
    this.scatter = new ObjectiveScatter(elements.scatter, (id) => {
      void this.selectCandidate(id);
    });
    this.scene = new SceneView(elements.scene);
  }

  async start(pose: UserPose, config?: SessionConfig): Promise<string> {
    this.pose = pose;
    this.state.sessionId = await this.api.createSession(pose, config);
    this.setStatus(`session ${this.state.sessionId}`);
    return this.state.sessionId;
  }

  /** One loop iteration: adapt, fetch the full front, update both views. */
  async runElicitationRound(): Promise<ViewState> {
    const sessionId = this.requireSession();
    if (this.state.busy) return this.state;
    this.state.busy = true;
    try {
      this.state.latest = await this.api.adapt(sessionId);
      this.state.front = await this.api.getFront(sessionId);
      this.render();
      this.setStatus(
        `round ${this.state.latest.round}: ${this.state.latest.candidates.length} candidates, ` +
          `front size ${this.state.front.candidates.length}`
      );
    } catch (error) {
      this.handleError(error);
    } finally {
      this.state.busy = false;
    }
    return this.state;
  }

  /** User picked a candidate: exactly one select POST, then one adapt. */
  async selectCandidate(candidateId: string): Promise<ViewState> {
    const sessionId = this.requireSession();
    const latest = this.state.latest;
    if (!latest) throw new Error("no round to select from");
    const chosen = latest.candidates.find((c) => c.id === candidateId);
    try {
      await this.api.select(sessionId, candidateId);
      if (chosen) {
        this.state.history.push({
          round: latest.round,
          candidateId,
          position: chosen.position,
        });
      }
    } catch (error) {
      this.handleError(error);
      return this.state;
    }
    return this.runElicitationRound();
  }

  handleProgress(event: ProgressEvent): void {
    if (event.type === "progress" && typeof event.generation === "number") {
      if (event.generation > this.state.lastGeneration) {
        this.state.lastGeneration = event.generation;
        this.setStatus(
          `optimizing: generation ${event.generation}, rank-0 size ${event.rank0_size}`
        );
      }
    }
  }

  render(): void {
    this.scatter.render(this.state.front, this.state.latest);
    if (this.pose && this.state.latest && this.state.front) {
      const candidates = sceneCandidatesFromRound(
        this.state.latest.candidates,
        this.state.front.candidates
      );
      const history: SceneCandidate[] = this.state.history.map((h) => ({
        id: h.candidateId,
        position: h.position,
        dimmed: true,
      }));
      this.scene.render(this.pose, candidates, history);
    }
    this.renderCards();
  }

  private renderCards(): void {
    const container = this.elements.cards;
    container.textContent = "";
    const latest = this.state.latest;
    if (!latest) return;
    for (const candidate of latest.candidates) {
      const card = document.createElement("div");
      card.className = "candidate-card";
      card.dataset.id = candidate.id;

      const heading = document.createElement("h3");
      heading.textContent =
        candidate.id === latest.auto_pick ? `${candidate.id} (suggested)` : candidate.id;
      card.appendChild(heading);

      const values = document.createElement("dl");
      for (const [objective, deg] of Object.entries(candidate.objectives_degrees)) {
        const term = document.createElement("dt");
        term.textContent = objective;
        const detail = document.createElement("dd");
        detail.textContent = formatDegrees(deg);
        values.appendChild(term);
        values.appendChild(detail);
      }
      card.appendChild(values);

      const badges = document.createElement("p");
      badges.className = "badges";
      const mu = candidate.mu === null ? "∞" : candidate.mu.toFixed(3);
      badges.textContent = `μ=${mu}${candidate.is_extreme ? " · extreme" : ""}`;
      card.appendChild(badges);

      const button = document.createElement("button");
      button.textContent = "select";
      button.addEventListener("click", () => void this.selectCandidate(candidate.id));
      card.appendChild(button);

      container.appendChild(card);
    }
  }

  private requireSession(): string {
    if (!this.state.sessionId) throw new Error("no session started");
    return this.state.sessionId;
  }

  private handleError(error: unknown): void {
    if (error instanceof ApiError && error.status === 409) {
      this.setStatus(`conflict: ${error.message} — refresh the round`);
      return;
    }
    if (error instanceof ApiError) {
      this.setStatus(`error ${error.status}: ${error.message}`);
      return;
    }
    this.setStatus(`network error — retry: ${String(error)}`);
  }

  private setStatus(text: string): void {
    this.elements.status.textContent = text;
  }
}
