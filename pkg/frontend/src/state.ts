// App state: the latest service payloads plus which screen is showing.
// Renderers read this; only app.ts (event handlers) replaces it.

import type {
  GroupStateView,
  RankingView,
  SessionSummary,
  SessionView,
  TierName,
  WhatIfView,
} from './types.js';

export type ScreenName = 'sessions' | 'stakeholders' | 'comparisons' | 'scores' | 'ranking';

export interface Banner {
  kind: 'error' | 'offline' | 'info';
  text: string;
}

export interface AppState {
  screen: ScreenName;
  sessions: SessionSummary[] | null;
  sid: string | null;
  session: SessionView | null;
  ranking: RankingView | null;
  // latest what-if response; at baseline the service reports all-zero deltas
  whatif: WhatIfView | null;
  // slider positions (user input, not derived data)
  sliders: Partial<Record<TierName, number>> | null;
  banner: Banner | null;
  lastJudgment?: GroupStateView;
  revise?: { group: TierName; a: string; b: string };
}

export function initialState(): AppState {
  return {
    screen: 'sessions',
    sessions: null,
    sid: null,
    session: null,
    ranking: null,
    whatif: null,
    sliders: null,
    banner: null,
  };
}

export type {
  FactorName,
  GroupStateView,
  RankingEntryView,
  RankingView,
  SessionSummary,
  SessionView,
  TierName,
  WhatIfView,
} from './types.js';
