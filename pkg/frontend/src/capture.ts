import type { TraceRecord } from './types.js';

export interface CaptureHandle {
  stop(): TraceRecord[]; // records with t_ms relative to capture start
}

/**
 * Browser sensor adapters. Each start* function returns null when the
 * capability is unavailable or permission is denied, in which case the UI
 * falls back to checkbox entry for that step.
 */

export async function startMotionCapture(): Promise<CaptureHandle | null> {
  if (typeof DeviceMotionEvent === 'undefined') return null;
  // iOS-style explicit permission gate
  const anyDme = DeviceMotionEvent as unknown as { requestPermission?: () => Promise<string> };
  if (typeof anyDme.requestPermission === 'function') {
    try {
      if ((await anyDme.requestPermission()) !== 'granted') return null;
    } catch {
      return null;
    }
  }

  const records: TraceRecord[] = [];
  const t0 = performance.now();
  const onMotion = (e: DeviceMotionEvent) => {
    const a = e.accelerationIncludingGravity;
    const g = e.rotationRate;
    records.push({
      t_ms: performance.now() - t0,
      kind: 'imu',
      ax: a?.x ?? 0, ay: a?.y ?? 0, az: a?.z ?? 9.81,
      // rotationRate is deg/s in browsers; the trace schema wants rad/s
      gx: ((g?.beta ?? 0) * Math.PI) / 180,
      gy: ((g?.gamma ?? 0) * Math.PI) / 180,
      gz: ((g?.alpha ?? 0) * Math.PI) / 180,
    });
  };
  window.addEventListener('devicemotion', onMotion);
  return {
    stop() {
      window.removeEventListener('devicemotion', onMotion);
      return records;
    },
  };
}

export async function startMicLevelCapture(frameMs = 50): Promise<CaptureHandle | null> {
  if (!navigator.mediaDevices?.getUserMedia) return null;
  let stream: MediaStream;
  try {
    stream = await navigator.mediaDevices.getUserMedia({ audio: true });
  } catch {
    return null;
  }

  const ctx = new AudioContext();
  const source = ctx.createMediaStreamSource(stream);
  const analyser = ctx.createAnalyser();
  analyser.fftSize = 2048;
  source.connect(analyser);

  const samples = new Float32Array(analyser.fftSize);
  const records: TraceRecord[] = [];
  const t0 = performance.now();
  const timer = window.setInterval(() => {
    analyser.getFloatTimeDomainData(samples);
    let sum = 0;
    for (let i = 0; i < samples.length; i++) sum += samples[i] * samples[i];
    const rms = Math.min(1, Math.sqrt(sum / samples.length));
    records.push({ t_ms: performance.now() - t0, kind: 'audio', rms });
  }, frameMs);

  return {
    stop() {
      window.clearInterval(timer);
      stream.getTracks().forEach((t) => t.stop());
      void ctx.close();
      return records;
    },
  };
}

export function startTouchCapture(target: HTMLElement): CaptureHandle {
  const records: TraceRecord[] = [];
  const t0 = performance.now();

  const record = (phase: 'down' | 'move' | 'up') => (e: PointerEvent) => {
    const rect = target.getBoundingClientRect();
    records.push({
      t_ms: performance.now() - t0,
      kind: 'touch',
      x: Math.min(1, Math.max(0, (e.clientX - rect.left) / rect.width)),
      y: Math.min(1, Math.max(0, (e.clientY - rect.top) / rect.height)),
      phase,
    });
  };
  const down = record('down');
  const move = record('move');
  const up = record('up');
  target.addEventListener('pointerdown', down);
  target.addEventListener('pointermove', move);
  target.addEventListener('pointerup', up);
  return {
    stop() {
      target.removeEventListener('pointerdown', down);
      target.removeEventListener('pointermove', move);
      target.removeEventListener('pointerup', up);
      return records;
    },
  };
}
