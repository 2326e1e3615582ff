/** Page bootstrap: wire the controller to the DOM and the progress stream. */

import { ApiClient, type UserPose } from "./api.js";
import { ElicitationController } from "./app.js";
import { connectProgress } from "./sse.js";

const DEFAULT_POSE: UserPose = {
  head_position: [0, 1.7, 0],
  gaze_forward: [0, 0, 1],
  shoulder_position: [0.2, 1.45, 0],
  arm_rest_direction: [0, -1, 0],
  arm_length: 0.65,
};

function required(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

export function bootstrap(): void {
  const baseUrl =
    (document.getElementById("service-url") as HTMLInputElement | null)?.value ??
    "http://127.0.0.1:8000";
  const api = new ApiClient(baseUrl);
  const controller = new ElicitationController(api, {
    scatter: required("scatter"),
    scene: required("scene"),
    cards: required("cards"),
    status: required("status"),
  });

  let disconnect: (() => void) | null = null;
  required("start").addEventListener("click", () => {
    void controller.start(DEFAULT_POSE).then((sessionId) => {
      disconnect?.();
      disconnect = connectProgress(api.eventsUrl(sessionId, 3600), (event) =>
        controller.handleProgress(event)
      );
      return controller.runElicitationRound();
    });
  });
  required("adapt").addEventListener("click", () => {
    void controller.runElicitationRound();
  });
}

if (typeof document !== "undefined" && document.getElementById("start")) {
  bootstrap();
}
