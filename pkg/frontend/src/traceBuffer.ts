import type { AbilityId, TraceRecord } from './types.js';

/**
 * In-memory trace buffer. Timestamps are zero-based per session and forced
 * monotone so the emitted JSONL always passes server-side validation.
 */
export class TraceBuffer {
  private records: TraceRecord[] = [];
  private lastT = 0;

  private clamp(t_ms: number): number {
    const t = Math.max(Math.round(t_ms), this.lastT, 0);
    this.lastT = t;
    return t;
  }

  push(record: TraceRecord): void {
    this.records.push({ ...record, t_ms: this.clamp(record.t_ms) });
  }

  taskStart(ability: AbilityId, t_ms: number): void {
    this.push({ t_ms, kind: 'task', ability, phase: 'start' });
  }

  taskEnd(ability: AbilityId, t_ms: number): void {
    this.push({ t_ms, kind: 'task', ability, phase: 'end' });
  }

  manual(ability: AbilityId, detected: boolean, t_ms: number): void {
    this.push({ t_ms, kind: 'manual', ability, detected });
  }

  get length(): number {
    return this.records.length;
  }

  get endTime(): number {
    return this.lastT;
  }

  /** One JSON object per line, trailing newline, same schema the service parses. */
  toJsonl(): string {
    if (this.records.length === 0) return '';
    return this.records.map((r) => JSON.stringify(r)).join('\n') + '\n';
  }
}
