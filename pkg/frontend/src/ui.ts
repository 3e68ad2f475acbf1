import { startMicLevelCapture, startMotionCapture, startTouchCapture, CaptureHandle } from './capture.js';
import type { Report, TraceRecord, WizardStep } from './types.js';
import { Wizard } from './wizard.js';

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  node.append(...children);
  return node;
}

function button(label: string, onClick: () => void, cls = 'btn'): HTMLButtonElement {
  const b = el('button', { class: cls, type: 'button' }, label);
  b.addEventListener('click', onClick);
  return b;
}

export class WizardUi {
  constructor(private wizard: Wizard, private root: HTMLElement) {}

  render(): void {
    this.root.replaceChildren();
    switch (this.wizard.phase) {
      case 'intro':
        this.renderIntro();
        break;
      case 'step':
        this.renderStep(this.wizard.currentStep!);
        break;
      case 'uploading':
        this.renderUploading();
        break;
      case 'report':
        this.renderReport(this.wizard.report!);
        break;
      case 'error':
        this.renderError();
        break;
    }
  }

  private renderIntro(): void {
    this.root.append(
      el('h1', {}, 'Ability assessment'),
      el('p', {}, 'A short series of tasks measures what you can do and recommends matching assistive technology. Any task can be skipped or answered with a checkbox.'),
      button('Start assessment', async () => {
        await this.wizard.start();
        this.render();
      }, 'btn btn-primary'),
    );
  }

  private progress(): HTMLElement {
    const n = this.wizard.steps.length;
    const i = this.wizard.stepIndex + 1;
    return el('p', { class: 'progress', 'aria-live': 'polite' }, `Task ${i} of ${n}`);
  }

  private renderStep(step: WizardStep): void {
    const heading = el('h2', {}, step.ability.replace(/_/g, ' '));
    const prompt = el('p', { class: 'prompt' }, step.prompt);
    const controls = el('div', { class: 'controls' });
    this.root.append(this.progress(), heading, prompt, controls);

    const advance = () => this.render();
    const checkboxControls = () => {
      controls.replaceChildren(
        button('Yes, I can', () => { this.wizard.answer({ kind: 'checkbox', detected: true }); advance(); }, 'btn btn-primary'),
        button('No, I cannot', () => { this.wizard.answer({ kind: 'checkbox', detected: false }); }, 'btn'),
        button('Skip this task', () => { this.wizard.skip(); advance(); }, 'btn btn-quiet'),
      );
      // keep the render in sync for the "No" path too
      controls.querySelectorAll('button')[1]!.addEventListener('click', advance);
    };

    if (step.capture === 'checkbox') {
      checkboxControls();
      return;
    }

    if (step.capture === 'transcript-entry') {
      const input = el('input', {
        type: 'text', class: 'text-entry', id: 'recognized',
        'aria-label': 'What the voice assistant understood',
      });
      const expected = 'the quick brown fox jumps over the lazy dog';
      controls.replaceChildren(
        el('label', { for: 'recognized' }, 'Recognized text'),
        input,
        button('Submit', () => {
          const record: TraceRecord = {
            t_ms: 500, kind: 'transcript', expected, recognized: input.value,
          };
          this.wizard.answer({ kind: 'records', records: [record] });
          advance();
        }, 'btn btn-primary'),
        button('Skip this task', () => { this.wizard.skip(); advance(); }, 'btn btn-quiet'),
      );
      return;
    }

    // sensor-backed step: offer capture, fall back to checkbox on denial
    let handle: CaptureHandle | null = null;
    const touchArea = el('div', {
      class: 'touch-area', tabindex: '0',
      'aria-label': 'Touch capture area',
    });
    const stopBtn = button('Stop and continue', () => {
      const records = handle ? handle.stop() : [];
      this.wizard.answer({ kind: 'records', records });
      advance();
    }, 'btn btn-primary');
    stopBtn.disabled = true;

    const startBtn = button('Start capture', async () => {
      if (step.capture === 'device-motion') handle = await startMotionCapture();
      else if (step.capture === 'microphone-level') handle = await startMicLevelCapture();
      else if (step.capture === 'touch') handle = startTouchCapture(touchArea);
      if (!handle) {
        // permission denied or capability missing
        controls.prepend(el('p', { class: 'notice', role: 'alert' },
          'Sensor capture is unavailable here; please answer with the checkbox instead.'));
        checkboxControls();
        return;
      }
      startBtn.disabled = true;
      stopBtn.disabled = false;
      if (step.durationMs > 0) {
        window.setTimeout(() => { if (!stopBtn.disabled) stopBtn.click(); }, step.durationMs);
      }
    }, 'btn');

    controls.replaceChildren(startBtn, stopBtn);
    if (step.capture === 'touch') controls.append(touchArea);
    controls.append(
      button('Answer with checkbox instead', () => checkboxControls(), 'btn btn-quiet'),
      button('Skip this task', () => { this.wizard.skip(); advance(); }, 'btn btn-quiet'),
    );
  }

  private renderUploading(): void {
    this.root.append(
      el('h2', {}, 'All tasks answered'),
      el('p', {}, 'Upload the recorded trace and compute your recommendations.'),
      button('Upload and compute', async () => {
        try {
          await this.wizard.finish();
        } catch {
          // phase moved to 'error'; local trace is preserved for retry
        }
        this.render();
      }, 'btn btn-primary'),
    );
  }

  private renderError(): void {
    this.root.append(
      el('h2', {}, 'Upload failed'),
      el('p', { role: 'alert' }, this.wizard.lastError ?? 'Unknown error'),
      button('Retry', async () => {
        try {
          await this.wizard.finish();
        } catch {
          // stay on error screen
        }
        this.render();
      }, 'btn btn-primary'),
    );
  }

  private renderReport(report: Report): void {
    const mediums = el('ul', { class: 'mediums' });
    for (const m of report.recommendation.mediums) {
      mediums.append(el('li', {}, `${m.id} (score ${(m.score * 100).toFixed(0)}%)`));
    }
    const technologies = el('ul', {});
    for (const t of report.recommendation.technologies) {
      technologies.append(el('li', {}, `${t.id} — via ${t.via}`));
    }

    const profile = el('table', { class: 'profile' },
      el('tr', {}, el('th', {}, 'Ability'), el('th', {}, 'Ease of action'), el('th', {}, 'Source')));
    for (const [ability, entry] of Object.entries(report.profile.entries)) {
      const row = el('tr', { class: entry.source === 'unassessed' ? 'unassessed' : '' },
        el('td', {}, ability.replace(/_/g, ' ')),
        el('td', {}, entry.source === 'unassessed' ? `${entry.ease} (not assessed)` : entry.ease),
        el('td', {}, entry.source));
      profile.append(row);
    }

    const blocked = el('ul', {});
    for (const [medium, info] of Object.entries(report.explanations)) {
      if (!info.recommended) {
        blocked.append(el('li', {}, `${medium}: blocked by ${info.blocking.join(', ') || 'nothing'}`));
      }
    }

    this.root.append(
      el('h2', {}, 'Recommended interaction mediums'),
      report.recommendation.mediums.length ? mediums : el('p', {}, 'No mediums could be recommended.'),
      el('h2', {}, 'Recommended technologies'),
      report.recommendation.technologies.length ? technologies : el('p', {}, 'None.'),
      el('h2', {}, 'Ability profile'),
      profile,
      el('h2', {}, 'Not recommended'),
      blocked,
    );
  }
}
