// Loads JSON captured from the real service (scripts/capture_fixtures.py),
// so screen tests assert against genuine payloads rather than hand-typed
// approximations.

import { readFileSync } from 'node:fs';

import type {
  GroupStateView,
  PrioritiesView,
  RankingView,
  SessionView,
  WhatIfView,
} from '../src/types.js';

function load<T>(name: string): T {
  const url = new URL(`./fixtures/${name}.json`, import.meta.url);
  return JSON.parse(readFileSync(url, 'utf-8')) as T;
}

export const sessionBeforeJudgments = (): SessionView => load('session_before_judgments');
export const sessionFull = (): SessionView => load('session_full');
export const sessionInconsistent = (): SessionView => load('session_inconsistent');
export const judgmentComplete = (): GroupStateView => load('judgment_complete');
export const judgmentSnapped = (): GroupStateView => load('judgment_snapped');
export const judgmentInconsistent = (): GroupStateView => load('judgment_inconsistent');
export const prioritiesFixture = (): PrioritiesView => load('priorities');
export const rankingFixture = (): RankingView => load('ranking');
export const whatifBaseline = (): WhatIfView => load('whatif_baseline');
export const whatifSilenced = (): WhatIfView => load('whatif_silenced');

export function exactValues(html: string): string[] {
  return [...html.matchAll(/data-exact="([^"]*)"/g)].map((m) => m[1]!);
}
