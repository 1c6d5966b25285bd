// View models mirroring the service payloads 1:1. Every number shown in the
// UI is taken from one of these shapes, never computed locally.

export type TierName = 'latent' | 'expectant' | 'definitive';
export type FactorName = 'value' | 'urgency';

export const TIER_ORDER: TierName[] = ['latent', 'expectant', 'definitive'];
export const FACTOR_ORDER: FactorName[] = ['value', 'urgency'];

export interface SessionSummary {
  id: string;
  name: string;
  stakeholders: number;
  requirements: number;
}

export interface StakeholderView {
  id: string;
  name: string;
  power: boolean;
  legitimacy: boolean;
  urgency: boolean;
  tier: TierName | null;
}

export interface JudgmentView {
  a: string;
  b: string;
  value: string; // exact fraction as text, e.g. "3" or "1/4"
  numerator: number;
  denominator: number;
}

export interface ConsistencyView {
  member_weights: Record<string, number>;
  lambda_max: number;
  consistency_index: number;
  consistency_ratio: number;
  consistent: boolean;
}

export interface TriadView {
  members: string[];
  error: number;
}

export interface GroupStateView {
  group: TierName;
  members: string[];
  judgments: JudgmentView[];
  progress: { filled: number; total: number };
  missing: [string, string][];
  result: ConsistencyView | null;
  worst_triad: TriadView | null;
  // present only on judgment PUT responses
  pair?: [string, string];
  snapped_from?: string | null;
}

export interface SessionView {
  id: string;
  name: string;
  schema_version: number;
  stakeholders: StakeholderView[];
  excluded: string[];
  groups: Record<TierName, GroupStateView>;
  priority_overrides: Partial<Record<TierName, number>>;
  requirements: { id: string; title: string }[];
  scores: Record<FactorName, Partial<Record<TierName, Record<string, number>>>>;
}

export interface GroupPriorityView {
  members: string[];
  member_weights: Record<string, number>;
  mean_weight: number;
  group_weight: number;
  override: number | null;
  priority: number;
  consistency: ConsistencyView | null;
  worst_triad: TriadView | null;
}

export interface PrioritiesView {
  groups: Record<TierName, GroupPriorityView>;
}

export interface RankingEntryView {
  requirement_id: string;
  title: string;
  value_weight: number;
  urgency_weight: number;
  total: number;
  rank: number;
}

export interface RankingView {
  priorities: Record<TierName, number>;
  entries: RankingEntryView[];
  ties: string[][];
  warnings: string[];
}

export interface WhatIfView {
  entries: RankingEntryView[];
  ties: string[][];
  deltas: Record<string, number>;
}

export interface ValidationView {
  ok: boolean;
  errors: string[];
  warnings: string[];
}

export interface ServiceError {
  code: string;
  message: string;
  details: unknown;
}
