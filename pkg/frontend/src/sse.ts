// Server-sent events over fetch. The gateway authenticates with a header,
// which the built-in EventSource cannot send, so the stream is read
// manually: accumulate chunks, split on blank lines, collect data: fields.

export interface SSEMessage {
  id: string | null;
  event: string;
  data: string;
}

export function createSSEParser(onMessage: (msg: SSEMessage) => void) {
  let buffer = "";

  function dispatchBlock(block: string) {
    let id: string | null = null;
    let event = "message";
    const data: string[] = [];
    for (const line of block.split("\n")) {
      if (line.startsWith(":")) continue; // comment / keepalive
      const sep = line.indexOf(":");
      if (sep === -1) continue;
      const field = line.slice(0, sep);
      let value = line.slice(sep + 1);
      if (value.startsWith(" ")) value = value.slice(1);
      if (field === "data") data.push(value);
      else if (field === "id") id = value;
      else if (field === "event") event = value;
    }
    if (data.length > 0) onMessage({ id, event, data: data.join("\n") });
  }

  return {
    push(chunk: string) {
      buffer += chunk.replace(/\r\n/g, "\n");
      let idx;
      while ((idx = buffer.indexOf("\n\n")) !== -1) {
        const block = buffer.slice(0, idx);
        buffer = buffer.slice(idx + 2);
        if (block.trim().length > 0) dispatchBlock(block);
      }
    },
  };
}

export async function readSSEStream(
  url: string,
  headers: Record<string, string>,
  onMessage: (msg: SSEMessage) => void,
  signal?: AbortSignal,
): Promise<void> {
  const response = await fetch(url, {
    headers: { ...headers, Accept: "text/event-stream" },
    signal,
  });
  if (response.status === 401) throw new AuthError("gateway rejected the token");
  if (!response.ok || !response.body) {
    throw new Error(`event stream failed: HTTP ${response.status}`);
  }
  const parser = createSSEParser(onMessage);
  const reader = response.body.getReader();
  const decoder = new TextDecoder();
  for (;;) {
    const { done, value } = await reader.read();
    if (done) break;
    parser.push(decoder.decode(value, { stream: true }));
  }
}

export class AuthError extends Error {}
