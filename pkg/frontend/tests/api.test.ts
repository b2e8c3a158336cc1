import { describe, expect, it } from "vitest";

import { ApiError, EvoshapeApi } from "../src/api.js";

interface Recorded {
  url: string;
  method?: string;
  body?: string;
}

function fakeFetch(status: number, payload: unknown, log: Recorded[]) {
  return async (url: string, init?: RequestInit): Promise<Response> => {
    log.push({ url, method: init?.method, body: init?.body as string | undefined });
    return new Response(JSON.stringify(payload), {
      status,
      headers: { "Content-Type": "application/json" },
    });
  };
}

const SESSION = {
  session_id: "abc",
  generation: 0,
  candidates: [{ candidate_id: "g0r0c0", expression: "x", shader: "..." }],
};

describe("EvoshapeApi", () => {
  it("posts seed and config on session creation", async () => {
    const log: Recorded[] = [];
    const api = new EvoshapeApi("http://server", fakeFetch(201, SESSION, log));
    const created = await api.createSession(7, { population_size: 20 });
    expect(created.session_id).toBe("abc");
    expect(log[0].url).toBe("http://server/api/sessions");
    expect(log[0].method).toBe("POST");
    expect(JSON.parse(log[0].body!)).toEqual({ seed: 7, config: { population_size: 20 } });
  });

  it("omits absent seed", async () => {
    const log: Recorded[] = [];
    const api = new EvoshapeApi("", fakeFetch(201, SESSION, log));
    await api.createSession();
    expect(JSON.parse(log[0].body!)).toEqual({});
  });

  it("sends selected candidate ids on step", async () => {
    const log: Recorded[] = [];
    const api = new EvoshapeApi("", fakeFetch(200, SESSION, log));
    await api.step("abc", ["g0r0c1", "g0r0c4"]);
    expect(log[0].url).toBe("/api/sessions/abc/step");
    expect(JSON.parse(log[0].body!)).toEqual({ selected: ["g0r0c1", "g0r0c4"] });
  });

  it("turns error envelopes into ApiError", async () => {
    const api = new EvoshapeApi("", fakeFetch(409, {
      error: { code: "stale_candidate", message: "superseded" },
    }, []));
    const failure = await api.step("abc", ["old"]).catch((e) => e);
    expect(failure).toBeInstanceOf(ApiError);
    expect(failure.status).toBe(409);
    expect(failure.code).toBe("stale_candidate");
    expect(failure.message).toBe("superseded");
  });

  it("survives non-JSON error bodies", async () => {
    const api = new EvoshapeApi("", async () => new Response("boom", { status: 500 }));
    const failure = await api.candidates("abc").catch((e) => e);
    expect(failure).toBeInstanceOf(ApiError);
    expect(failure.status).toBe(500);
    expect(failure.code).toBe("unknown");
  });

  it("uploads model documents verbatim", async () => {
    const log: Recorded[] = [];
    const api = new EvoshapeApi("", fakeFetch(201, { model_id: "m1" }, log));
    const mesh = { name: "tri", positions: [0, 0, 0, 1, 0, 0, 0, 1, 0], indices: [0, 1, 2] };
    const result = await api.uploadModel(mesh);
    expect(result.model_id).toBe("m1");
    expect(JSON.parse(log[0].body!)).toEqual(mesh);
  });

  it("paginates listings", async () => {
    const log: Recorded[] = [];
    const api = new EvoshapeApi("", fakeFetch(200, { total: 0, items: [] }, log));
    await api.listTransformations(10, 5);
    expect(log[0].url).toBe("/api/transformations?offset=10&limit=5");
  });
});
