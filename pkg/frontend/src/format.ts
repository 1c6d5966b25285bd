// Rendering helpers shared by all screens.
//
// Numbers: the UI must never show a digit the service did not send. num()
// renders the display rounding but carries the untouched value in a
// data-exact attribute, so tests (and curious users via tooltip) can check
// the displayed figure against the service response byte for byte.

export function esc(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

export function num(value: number, decimals = 4): string {
  const exact = String(value);
  return `<span class="num" data-exact="${esc(exact)}" title="${esc(exact)}">${value.toFixed(decimals)}</span>`;
}

// The judgment selector offers exactly these values and nothing else; the
// service re-validates anyway, but the UI cannot emit an off-scale value.
export interface ScaleOption {
  value: string; // what gets sent, e.g. "5" or "1/5"
  label: string;
}

const INTENSITY_LABELS: Record<number, string> = {
  1: 'Equal Importance',
  2: 'Weak or Slight',
  3: 'Moderate Importance',
  4: 'Moderate Plus',
  5: 'Strong Importance',
  6: 'Strong Plus',
  7: 'Very Strong',
  8: 'Very, Very Strong',
  9: 'Extreme Importance',
};

export function scaleOptions(): ScaleOption[] {
  const options: ScaleOption[] = [];
  for (let k = 9; k >= 2; k--) {
    options.push({ value: `1/${k}`, label: `1/${k} — ${INTENSITY_LABELS[k]} (second)` });
  }
  options.push({ value: '1', label: `1 — ${INTENSITY_LABELS[1]}` });
  for (let k = 2; k <= 9; k++) {
    options.push({ value: `${k}`, label: `${k} — ${INTENSITY_LABELS[k]} (first)` });
  }
  return options;
}

export const SCORE_LABELS: Record<string, Record<number, string>> = {
  value: {
    1: 'no value',
    2: 'little value',
    3: 'some value',
    4: 'high value',
    5: 'very high value',
  },
  urgency: {
    1: 'not urgent',
    2: 'slightly urgent',
    3: 'moderately urgent',
    4: 'urgent',
    5: 'immediately needed',
  },
};

export const TIER_LABELS: Record<string, string> = {
  latent: 'Latent (weight 1)',
  expectant: 'Expectant (weight 2)',
  definitive: 'Definitive (weight 3)',
};
