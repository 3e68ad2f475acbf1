import { SessionClient } from './client.js';
import { WIZARD_STEPS } from './steps.js';
import { TraceBuffer } from './traceBuffer.js';
import type { AbilityId, Report, TraceRecord, WizardStep } from './types.js';

export type StepAnswer =
  | { kind: 'checkbox'; detected: boolean }
  | { kind: 'records'; records: TraceRecord[] } // t_ms relative to step start
  | { kind: 'skip' };

export type WizardPhase = 'intro' | 'step' | 'uploading' | 'report' | 'error';

const STEP_GAP_MS = 1000;

/**
 * Drives one assessment session: walks the step list, accumulates the trace
 * locally, then uploads, computes, and fetches the report. The local trace
 * is preserved across upload failures so finish() can simply be retried.
 */
export class Wizard {
  readonly steps: WizardStep[];
  readonly buffer = new TraceBuffer();
  phase: WizardPhase = 'intro';
  stepIndex = 0;
  sessionId: string | null = null;
  report: Report | null = null;
  lastError: string | null = null;
  private answered = new Map<AbilityId, StepAnswer['kind']>();

  constructor(private client: SessionClient, steps: WizardStep[] = WIZARD_STEPS) {
    this.steps = steps;
  }

  get currentStep(): WizardStep | null {
    return this.phase === 'step' ? this.steps[this.stepIndex] : null;
  }

  async start(): Promise<void> {
    const session = await this.client.createSession();
    this.sessionId = session.id;
    this.phase = 'step';
    this.stepIndex = 0;
  }

  /** Record the answer for the current step and advance. */
  answer(answer: StepAnswer): void {
    const step = this.currentStep;
    if (!step) throw new Error(`no active step (phase=${this.phase})`);

    if (answer.kind === 'checkbox') {
      this.buffer.manual(step.ability, answer.detected, this.buffer.endTime + STEP_GAP_MS);
    } else if (answer.kind === 'records') {
      const start = this.buffer.endTime + STEP_GAP_MS;
      this.buffer.taskStart(step.ability, start);
      let last = start;
      for (const record of answer.records) {
        const t = start + Math.max(0, record.t_ms);
        this.buffer.push({ ...record, t_ms: t });
        last = Math.max(last, t);
      }
      this.buffer.taskEnd(step.ability, Math.max(last + 1, start + step.durationMs));
    }
    this.answered.set(step.ability, answer.kind);

    this.stepIndex += 1;
    if (this.stepIndex >= this.steps.length) {
      this.phase = 'uploading';
    }
  }

  skip(): void {
    this.answer({ kind: 'skip' });
  }

  /** Upload the trace, run the computation, and fetch the report. */
  async finish(): Promise<Report> {
    if (!this.sessionId) throw new Error('wizard not started');
    this.phase = 'uploading';
    try {
      // an empty trace is still uploaded: all-skipped sessions compute to
      // an all-unassessed profile rather than failing
      await this.client.uploadTrace(this.sessionId, this.buffer.toJsonl());
      await this.client.compute(this.sessionId);
      this.report = await this.client.getReport(this.sessionId);
      this.phase = 'report';
      this.lastError = null;
      return this.report;
    } catch (e) {
      this.lastError = e instanceof Error ? e.message : String(e);
      this.phase = 'error';
      throw e;
    }
  }

  answerKind(ability: AbilityId): StepAnswer['kind'] | undefined {
    return this.answered.get(ability);
  }
}
