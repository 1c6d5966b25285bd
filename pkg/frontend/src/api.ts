// HTTP client for the prioritization service. Unwraps the {ok, data|error}
// envelope and turns failures into ApiError/OfflineError so screens can
// surface the service's own code and message verbatim.

import type {
  FactorName,
  GroupStateView,
  PrioritiesView,
  RankingView,
  ServiceError,
  SessionSummary,
  SessionView,
  TierName,
  ValidationView,
  WhatIfView,
} from './types.js';

export class ApiError extends Error {
  readonly code: string;
  readonly status: number;
  readonly details: unknown;

  constructor(status: number, err: ServiceError) {
    super(err.message);
    this.name = 'ApiError';
    this.code = err.code;
    this.status = status;
    this.details = err.details;
  }
}

export class OfflineError extends Error {
  constructor(cause: unknown) {
    super('service unreachable');
    this.name = 'OfflineError';
    this.cause = cause;
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export interface ClientOptions {
  baseUrl: string;
  token?: string;
  // injectable for tests
  fetchImpl?: FetchLike;
}

export class ApiClient {
  private readonly base: string;
  private readonly token: string | undefined;
  private readonly fetchImpl: FetchLike;

  constructor(opts: ClientOptions) {
    this.base = opts.baseUrl.replace(/\/+$/, '');
    this.token = opts.token;
    this.fetchImpl = opts.fetchImpl ?? ((url, init) => fetch(url, init));
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = {};
    if (body !== undefined) headers['content-type'] = 'application/json';
    if (this.token) headers['authorization'] = `Bearer ${this.token}`;
    let resp: Response;
    try {
      resp = await this.fetchImpl(this.base + path, {
        method,
        headers,
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (exc) {
      throw new OfflineError(exc);
    }
    let doc: { ok: boolean; data?: T; error?: ServiceError };
    try {
      doc = await resp.json();
    } catch (exc) {
      throw new OfflineError(exc);
    }
    if (!doc.ok || !resp.ok) {
      const err = doc.error ?? {
        code: `HTTP_${resp.status}`,
        message: resp.statusText,
        details: null,
      };
      throw new ApiError(resp.status, err);
    }
    return doc.data as T;
  }

  listSessions(): Promise<{ sessions: SessionSummary[] }> {
    return this.request('GET', '/sessions');
  }

  createSession(name: string): Promise<SessionSummary> {
    return this.request('POST', '/sessions', { name });
  }

  getSession(sid: string): Promise<SessionView> {
    return this.request('GET', `/sessions/${encodeURIComponent(sid)}`);
  }

  deleteSession(sid: string): Promise<{ deleted: string }> {
    return this.request('DELETE', `/sessions/${encodeURIComponent(sid)}`);
  }

  putStakeholder(
    sid: string,
    id: string,
    body: { name: string; power: boolean; legitimacy: boolean; urgency: boolean },
  ): Promise<{ id: string; tier: TierName | null; excluded: boolean }> {
    return this.request(
      'PUT',
      `/sessions/${encodeURIComponent(sid)}/stakeholders/${encodeURIComponent(id)}`,
      body,
    );
  }

  putJudgment(
    sid: string,
    tier: TierName,
    a: string,
    b: string,
    judgment: string | number,
  ): Promise<GroupStateView> {
    return this.request(
      'PUT',
      `/sessions/${encodeURIComponent(sid)}/groups/${tier}/judgments/` +
        `${encodeURIComponent(a)}/${encodeURIComponent(b)}`,
      { judgment },
    );
  }

  putRequirement(sid: string, rid: string, title: string): Promise<{ id: string }> {
    return this.request(
      'PUT',
      `/sessions/${encodeURIComponent(sid)}/requirements/${encodeURIComponent(rid)}`,
      { title },
    );
  }

  putScore(
    sid: string,
    factor: FactorName,
    tier: TierName,
    rid: string,
    score: number,
  ): Promise<{ filled: number }> {
    return this.request(
      'PUT',
      `/sessions/${encodeURIComponent(sid)}/scores/${factor}/${tier}/${encodeURIComponent(rid)}`,
      { score },
    );
  }

  putOverride(
    sid: string,
    tier: TierName,
    priority: number | null,
  ): Promise<{ group: TierName; priority: number | null }> {
    return this.request(
      'PUT',
      `/sessions/${encodeURIComponent(sid)}/overrides/${tier}`,
      { priority },
    );
  }

  getPriorities(sid: string): Promise<PrioritiesView> {
    return this.request('GET', `/sessions/${encodeURIComponent(sid)}/priorities`);
  }

  getRanking(sid: string): Promise<RankingView> {
    return this.request('GET', `/sessions/${encodeURIComponent(sid)}/ranking`);
  }

  whatIf(
    sid: string,
    body: { priorities?: Partial<Record<TierName, number>> },
  ): Promise<WhatIfView> {
    return this.request('POST', `/sessions/${encodeURIComponent(sid)}/whatif`, body);
  }

  getValidation(sid: string): Promise<ValidationView> {
    return this.request('GET', `/sessions/${encodeURIComponent(sid)}/validation`);
  }
}
