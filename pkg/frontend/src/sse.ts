/** Server-sent progress events from the optimizer. */

export interface ProgressEvent {
  type: "progress" | "round_complete";
  round: number;
  generation?: number;
  rank0_size?: number;
  front_size?: number;
}

type EventSourceLike = Pick<EventSource, "addEventListener" | "close">;
type EventSourceFactory = (url: string) => EventSourceLike;

export function connectProgress(
  url: string,
  onEvent: (event: ProgressEvent) => void,
  makeSource: EventSourceFactory = (u) => new EventSource(u)
): () => void {
  const source = makeSource(url);
  const handler = (message: MessageEvent) => {
    try {
      onEvent(JSON.parse(message.data) as ProgressEvent);
    } catch {
      // Malformed frames are dropped; the stream itself stays open.
    }
  };
  source.addEventListener("progress", handler as EventListener);
  source.addEventListener("round_complete", handler as EventListener);
  return () => source.close();
}
