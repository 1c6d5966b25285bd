import { describe, expect, test } from 'vitest';

import { ApiClient, ApiError, OfflineError } from '../src/api.js';

interface Recorded {
  url: string;
  method: string;
  headers: Record<string, string>;
  body: string | undefined;
}

function fakeFetch(status: number, payload: unknown) {
  const calls: Recorded[] = [];
  const impl = async (url: string, init?: RequestInit): Promise<Response> => {
    calls.push({
      url,
      method: init?.method ?? 'GET',
      headers: (init?.headers as Record<string, string>) ?? {},
      body: init?.body as string | undefined,
    });
    return new Response(JSON.stringify(payload), {
      status,
      headers: { 'content-type': 'application/json' },
    });
  };
  return { impl, calls };
}

describe('ApiClient', () => {
  test('unwraps the ok envelope', async () => {
    const { impl } = fakeFetch(200, { ok: true, data: { sessions: [] } });
    const api = new ApiClient({ baseUrl: 'http://svc', fetchImpl: impl });
    expect(await api.listSessions()).toEqual({ sessions: [] });
  });

  test('turns the error envelope into ApiError with the service code', async () => {
    const { impl } = fakeFetch(409, {
      ok: false,
      error: { code: 'OFF_SCALE_JUDGMENT', message: 'judgment 12 is off the scale', details: null },
    });
    const api = new ApiClient({ baseUrl: 'http://svc', fetchImpl: impl });
    const err = await api
      .putJudgment('abc', 'latent', 's1', 's4', 12)
      .then(() => null)
      .catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    const apiErr = err as ApiError;
    expect(apiErr.code).toBe('OFF_SCALE_JUDGMENT');
    expect(apiErr.status).toBe(409);
    expect(apiErr.message).toBe('judgment 12 is off the scale');
  });

  test('keeps validation details for the caller', async () => {
    const { impl } = fakeFetch(422, {
      ok: false,
      error: {
        code: 'VALIDATION_FAILED',
        message: 'session is not ready',
        details: { errors: ['missing value score'], warnings: [] },
      },
    });
    const api = new ApiClient({ baseUrl: 'http://svc', fetchImpl: impl });
    const err = (await api.getRanking('abc').catch((e: unknown) => e)) as ApiError;
    expect(err.details).toEqual({ errors: ['missing value score'], warnings: [] });
  });

  test('network failure becomes OfflineError', async () => {
    const api = new ApiClient({
      baseUrl: 'http://svc',
      fetchImpl: async () => {
        throw new TypeError('fetch failed');
      },
    });
    const err = await api.listSessions().catch((e: unknown) => e);
    expect(err).toBeInstanceOf(OfflineError);
  });

  test('sends the bearer token when configured', async () => {
    const { impl, calls } = fakeFetch(200, { ok: true, data: { sessions: [] } });
    const api = new ApiClient({ baseUrl: 'http://svc', token: 'hunter2', fetchImpl: impl });
    await api.listSessions();
    expect(calls[0]?.headers['authorization']).toBe('Bearer hunter2');
  });

  test('builds judgment PUT with encoded ids and JSON body', async () => {
    const { impl, calls } = fakeFetch(200, { ok: true, data: {} });
    const api = new ApiClient({ baseUrl: 'http://svc/', fetchImpl: impl });
    await api.putJudgment('s id', 'latent', 'a/b', 's4', '1/5');
    const call = calls[0]!;
    expect(call.url).toBe('http://svc/sessions/s%20id/groups/latent/judgments/a%2Fb/s4');
    expect(call.method).toBe('PUT');
    expect(JSON.parse(call.body!)).toEqual({ judgment: '1/5' });
    expect(call.headers['content-type']).toBe('application/json');
  });

  test('what-if posts only the hypothetical priorities', async () => {
    const { impl, calls } = fakeFetch(200, { ok: true, data: { entries: [], ties: [], deltas: {} } });
    const api = new ApiClient({ baseUrl: 'http://svc', fetchImpl: impl });
    await api.whatIf('abc', { priorities: { definitive: 0 } });
    expect(JSON.parse(calls[0]!.body!)).toEqual({ priorities: { definitive: 0 } });
  });

  test('http error without an envelope still raises ApiError', async () => {
    const impl = async (): Promise<Response> =>
      new Response('{"ok": false}', { status: 500 });
    const api = new ApiClient({ baseUrl: 'http://svc', fetchImpl: impl });
    const err = (await api.listSessions().catch((e: unknown) => e)) as ApiError;
    expect(err).toBeInstanceOf(ApiError);
    expect(err.code).toBe('HTTP_500');
  });
});
