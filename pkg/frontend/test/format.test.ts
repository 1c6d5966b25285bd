import { describe, expect, test } from 'vitest';

import { esc, num, scaleOptions } from '../src/format.js';

describe('esc', () => {
  test('escapes html metacharacters', () => {
    expect(esc('<b>&"x"</b>')).toBe('&lt;b&gt;&amp;&quot;x&quot;&lt;/b&gt;');
  });

  test('leaves plain text alone', () => {
    expect(esc('Req1 vs s4')).toBe('Req1 vs s4');
  });
});

describe('num', () => {
  test('carries the exact value alongside the rounded display', () => {
    const weight = 1 / 3 + 1e-16; // irrational-looking double with a long repr
    const html = num(weight);
    expect(html).toContain(`data-exact="${String(weight)}"`);
    expect(html).toContain(`>${weight.toFixed(4)}<`);
  });

  test('round decimal stays identical in both forms', () => {
    const html = num(7.17);
    expect(html).toContain('data-exact="7.17"');
    expect(html).toContain('>7.1700<');
  });

  test('display precision is adjustable', () => {
    expect(num(0.33, 2)).toContain('>0.33<');
  });
});

describe('scaleOptions', () => {
  test('offers exactly the seventeen legal values', () => {
    const values = scaleOptions().map((o) => o.value);
    expect(values).toHaveLength(17);
    const expected = new Set<string>();
    for (let k = 2; k <= 9; k++) expected.add(`1/${k}`);
    for (let k = 1; k <= 9; k++) expected.add(`${k}`);
    expect(new Set(values)).toEqual(expected);
  });

  test('labels carry the verbal anchors', () => {
    const byValue = new Map(scaleOptions().map((o) => [o.value, o.label]));
    expect(byValue.get('1')).toContain('Equal Importance');
    expect(byValue.get('3')).toContain('Moderate Importance');
    expect(byValue.get('9')).toContain('Extreme Importance');
    expect(byValue.get('1/9')).toContain('Extreme Importance');
  });

  test('reciprocals come first, ascending to 9', () => {
    const values = scaleOptions().map((o) => o.value);
    expect(values[0]).toBe('1/9');
    expect(values[8]).toBe('1');
    expect(values[16]).toBe('9');
  });
});
