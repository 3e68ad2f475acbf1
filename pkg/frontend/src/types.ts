export const ABILITY_IDS = [
  'head_tilt_up', 'head_tilt_down', 'head_turn_left', 'head_turn_right',
  'gaze_up', 'gaze_down', 'gaze_left', 'gaze_right',
  'blink', 'see', 'suck', 'blow_in', 'blow_out',
  'bite_tongue', 'tongue_left', 'tongue_right',
  'smile', 'speak',
  'shoulder_move', 'elbow_move', 'wrist_rotate', 'finger_bend',
  'ankle_move', 'walk',
] as const;

export type AbilityId = typeof ABILITY_IDS[number];

export type CaptureMode =
  | 'device-motion'
  | 'microphone-level'
  | 'touch'
  | 'transcript-entry'
  | 'checkbox';

export interface WizardStep {
  ability: AbilityId;
  prompt: string;
  capture: CaptureMode;
  durationMs: number;
}

export interface TraceRecord {
  t_ms: number;
  kind: 'imu' | 'audio' | 'step' | 'face' | 'touch' | 'transcript' | 'task' | 'manual';
  [key: string]: number | string | boolean;
}

export interface SessionView {
  id: string;
  state: 'created' | 'traced' | 'profiled' | 'complete';
}

export interface MediumRecommendation {
  id: string;
  score: number;
  gating: [string, string][];
}

export interface TechnologyRecommendation {
  id: string;
  via: string;
}

export interface Report {
  kb_version: string;
  profile: {
    entries: Record<string, { ease: string; source: string }>;
    warnings: string[];
  };
  recommendation: {
    mediums: MediumRecommendation[];
    technologies: TechnologyRecommendation[];
  };
  explanations: Record<string, {
    recommended: boolean;
    requirements: Record<string, string>;
    blocking: string[];
    score?: number;
  }>;
}
