import type { WizardStep } from './types.js';

// One step per ability, in the order the assessment walks through them.
// Sensor-backed steps fall back to checkbox entry when capture is unavailable.
export const WIZARD_STEPS: WizardStep[] = [
  { ability: 'walk', capture: 'device-motion', durationMs: 40_000,
    prompt: 'Walk as many steps as you can for 40 seconds while holding the device.' },
  { ability: 'smile', capture: 'checkbox', durationMs: 5_000,
    prompt: 'Can you smile?' },
  { ability: 'blink', capture: 'checkbox', durationMs: 5_000,
    prompt: 'Can you blink twice in a row?' },
  { ability: 'speak', capture: 'transcript-entry', durationMs: 10_000,
    prompt: 'Read this phrase aloud: "the quick brown fox jumps over the lazy dog", then type what your voice assistant understood.' },
  { ability: 'head_tilt_up', capture: 'device-motion', durationMs: 5_000,
    prompt: 'Tilt your head upwards as far as is comfortable, then back.' },
  { ability: 'head_tilt_down', capture: 'device-motion', durationMs: 5_000,
    prompt: 'Tilt your head downwards as far as is comfortable, then back.' },
  { ability: 'head_turn_left', capture: 'device-motion', durationMs: 5_000,
    prompt: 'Turn your head to the left as far as is comfortable, then back.' },
  { ability: 'head_turn_right', capture: 'device-motion', durationMs: 5_000,
    prompt: 'Turn your head to the right as far as is comfortable, then back.' },
  { ability: 'shoulder_move', capture: 'device-motion', durationMs: 5_000,
    prompt: 'Hold the device against your shoulder and raise your arm.' },
  { ability: 'elbow_move', capture: 'device-motion', durationMs: 5_000,
    prompt: 'Hold the device in your hand and bend your elbow fully.' },
  { ability: 'wrist_rotate', capture: 'device-motion', durationMs: 5_000,
    prompt: 'Hold the device and rotate your wrist.' },
  { ability: 'finger_bend', capture: 'touch', durationMs: 10_000,
    prompt: 'Tap and swipe anywhere in the box below.' },
  { ability: 'ankle_move', capture: 'device-motion', durationMs: 5_000,
    prompt: 'Rest the device on your foot and move your ankle up and down.' },
  { ability: 'blow_in', capture: 'microphone-level', durationMs: 5_000,
    prompt: 'Blow inwards (suck air in sharply) close to the microphone.' },
  { ability: 'blow_out', capture: 'microphone-level', durationMs: 5_000,
    prompt: 'Blow outwards steadily at the microphone.' },
  { ability: 'suck', capture: 'checkbox', durationMs: 0,
    prompt: 'Can you suck, for example through a straw?' },
  { ability: 'see', capture: 'checkbox', durationMs: 0,
    prompt: 'Can you see the screen clearly?' },
  { ability: 'gaze_up', capture: 'checkbox', durationMs: 0,
    prompt: 'Can you look upwards without moving your head?' },
  { ability: 'gaze_down', capture: 'checkbox', durationMs: 0,
    prompt: 'Can you look downwards without moving your head?' },
  { ability: 'gaze_left', capture: 'checkbox', durationMs: 0,
    prompt: 'Can you look left without moving your head?' },
  { ability: 'gaze_right', capture: 'checkbox', durationMs: 0,
    prompt: 'Can you look right without moving your head?' },
  { ability: 'bite_tongue', capture: 'checkbox', durationMs: 0,
    prompt: 'Can you gently bite your tongue between your teeth?' },
  { ability: 'tongue_left', capture: 'checkbox', durationMs: 0,
    prompt: 'Can you move your tongue to the left?' },
  { ability: 'tongue_right', capture: 'checkbox', durationMs: 0,
    prompt: 'Can you move your tongue to the right?' },
];
