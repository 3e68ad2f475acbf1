import type { AbilityId, Report, SessionView } from './types.js';

export class ApiError extends Error {
  constructor(message: string, public status: number) {
    super(message);
  }
}

async function check(response: Response): Promise<Response> {
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = await response.json();
      if (body.error) detail = body.error;
    } catch {
      // keep statusText
    }
    throw new ApiError(detail, response.status);
  }
  return response;
}

/** Thin client for the session service HTTP API. */
export class SessionClient {
  constructor(private baseUrl: string = '') {}

  async createSession(): Promise<SessionView> {
    const r = await check(await fetch(`${this.baseUrl}/sessions`, { method: 'POST' }));
    return r.json();
  }

  async uploadTrace(sessionId: string, jsonl: string): Promise<SessionView> {
    const r = await check(await fetch(`${this.baseUrl}/sessions/${sessionId}/trace`, {
      method: 'PUT',
      headers: { 'Content-Type': 'application/jsonl' },
      body: jsonl,
    }));
    return r.json();
  }

  async submitManual(sessionId: string, ability: AbilityId, detected: boolean): Promise<SessionView> {
    const r = await check(await fetch(`${this.baseUrl}/sessions/${sessionId}/manual`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ ability, detected }),
    }));
    return r.json();
  }

  async compute(sessionId: string): Promise<SessionView> {
    const r = await check(await fetch(`${this.baseUrl}/sessions/${sessionId}/compute`, {
      method: 'POST',
    }));
    return r.json();
  }

  async getReport(sessionId: string): Promise<Report> {
    const r = await check(await fetch(`${this.baseUrl}/sessions/${sessionId}/report`));
    return r.json();
  }

  async submitSus(sessionId: string, items: number[]): Promise<{ score: number; adjective: string }> {
    const r = await check(await fetch(`${this.baseUrl}/sessions/${sessionId}/questionnaires/sus`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ items }),
    }));
    return r.json();
  }

  async submitTlx(
    sessionId: string,
    ratings: Record<string, number>,
  ): Promise<{ workload: number; bands: Record<string, string> }> {
    const r = await check(await fetch(`${this.baseUrl}/sessions/${sessionId}/questionnaires/tlx`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ ratings }),
    }));
    return r.json();
  }
}
