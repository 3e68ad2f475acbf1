/** End-to-end: checkbox-only walkthrough against a live session service. */

import { spawn, spawnSync, ChildProcess } from 'node:child_process';
import { mkdtempSync, writeFileSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { SessionClient } from '../src/client.js';
import { Wizard } from '../src/wizard.js';

const PORT = 8765 + Math.floor(Math.random() * 1000);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;

async function waitForServer(timeoutMs = 20_000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const r = await fetch(`${BASE}/kb`);
      if (r.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 200));
  }
  throw new Error('session service did not come up');
}

beforeAll(async () => {
  const dataDir = mkdtempSync(join(tmpdir(), 'assess-e2e-'));
  server = spawn('assess', ['serve', '--port', String(PORT), '--data', dataDir], {
    stdio: 'ignore',
  });
  await waitForServer();
}, 30_000);

afterAll(() => {
  server?.kill();
});

// The published worked example: a user who cannot bend their fingers or speak
const IMPOSSIBLE = new Set(['finger_bend', 'speak']);

describe('wizard against live service', () => {
  it('checkbox-only worked example reproduces the published recommendation', async () => {
    const wizard = new Wizard(new SessionClient(BASE));
    await wizard.start();
    while (wizard.phase === 'step') {
      const ability = wizard.currentStep!.ability;
      wizard.answer({ kind: 'checkbox', detected: !IMPOSSIBLE.has(ability) });
    }
    const report = await wizard.finish();

    const mediums = report.recommendation.mediums.map((m) => m.id).sort();
    expect(mediums).toEqual(['brain', 'chin', 'eye', 'foot', 'head', 'sip_n_puff', 'tongue']);
    const technologies = report.recommendation.technologies.map((t) => t.id).sort();
    expect(technologies).toEqual([
      'eeg', 'eye_tracker', 'head_mounted_display', 'head_tracker',
      'smartphone', 'switch', 'tablet',
    ]);
    expect(report.explanations['touch'].blocking).toEqual(['finger_bend']);
    expect(report.explanations['voice'].blocking).toEqual(['speak']);
  }, 30_000);

  it('emitted trace passes `assess trace validate`', async () => {
    const wizard = new Wizard(new SessionClient(BASE));
    await wizard.start();
    while (wizard.phase === 'step') {
      const ability = wizard.currentStep!.ability;
      if (ability === 'walk') {
        wizard.answer({
          kind: 'records',
          records: Array.from({ length: 25 }, (_, k) => ({
            t_ms: 500 + 1000 * k, kind: 'step' as const,
          })),
        });
      } else {
        wizard.answer({ kind: 'checkbox', detected: true });
      }
    }
    const tracePath = join(mkdtempSync(join(tmpdir(), 'assess-trace-')), 'wizard.jsonl');
    writeFileSync(tracePath, wizard.buffer.toJsonl());
    const result = spawnSync('assess', ['trace', 'validate', tracePath], { encoding: 'utf-8' });
    expect(result.status, result.stderr).toBe(0);
    expect(result.stdout).toMatch(/^ok:/);

    const report = await wizard.finish();
    expect(report.profile.entries['walk'].ease).toBe('Easy');
    expect(report.profile.entries['walk'].source).toBe('sensor');
  }, 30_000);

  it('skip-everything session renders an empty recommendation with unassessed flags', async () => {
    const wizard = new Wizard(new SessionClient(BASE));
    await wizard.start();
    while (wizard.phase === 'step') wizard.skip();
    const report = await wizard.finish();
    expect(report.recommendation.mediums).toEqual([]);
    expect(report.recommendation.technologies).toEqual([]);
    expect(Object.values(report.profile.entries).every((e) => e.source === 'unassessed')).toBe(true);
  }, 30_000);
});
