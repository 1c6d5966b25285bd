// Screen renderers: pure functions from state to an HTML string. No DOM
// access and no arithmetic on domain numbers here; every figure comes out
// of a service payload untouched (see format.num).

import { esc, num, scaleOptions, SCORE_LABELS, TIER_LABELS } from './format.js';
import type {
  AppState,
  FactorName,
  GroupStateView,
  RankingEntryView,
  SessionView,
  TierName,
} from './state.js';
import { FACTOR_ORDER, TIER_ORDER } from './types.js';

export function renderShell(state: AppState): string {
  const tabs: [string, string][] = [
    ['sessions', 'Sessions'],
    ['stakeholders', 'Stakeholders'],
    ['comparisons', 'Comparisons'],
    ['scores', 'Scores'],
    ['ranking', 'Ranking'],
  ];
  const nav = tabs
    .map(([id, label]) => {
      const disabled = id !== 'sessions' && !state.sid ? ' disabled' : '';
      const current = state.screen === id ? ' aria-current="page"' : '';
      return `<button class="tab" data-nav="${id}"${disabled}${current}>${label}</button>`;
    })
    .join('');
  const title = state.session ? ` — ${esc(state.session.name)}` : '';
  return `
    <header>
      <h1>salientrank${title}</h1>
      <nav>${nav}</nav>
    </header>
    ${renderBanner(state)}
    <main>${renderScreen(state)}</main>
  `;
}

function renderBanner(state: AppState): string {
  if (!state.banner) return '';
  const { kind, text } = state.banner;
  return `<div class="banner banner-${kind}" role="alert">${esc(text)}</div>`;
}

function renderScreen(state: AppState): string {
  switch (state.screen) {
    case 'sessions':
      return renderSessions(state);
    case 'stakeholders':
      return state.session ? renderStakeholders(state.session) : loading();
    case 'comparisons':
      return state.session
        ? renderComparisons(state.session, state.lastJudgment, state.revise)
        : loading();
    case 'scores':
      return state.session ? renderScores(state.session) : loading();
    case 'ranking':
      return renderRanking(state);
  }
}

function loading(): string {
  return '<p class="muted">loading…</p>';
}

// --- sessions ---

export function renderSessions(state: AppState): string {
  const rows = (state.sessions ?? [])
    .map(
      (s) => `
      <tr>
        <td><button class="link" data-open-session="${esc(s.id)}">${esc(s.name)}</button></td>
        <td class="mono">${esc(s.id)}</td>
        <td>${s.stakeholders}</td>
        <td>${s.requirements}</td>
        <td><button data-delete-session="${esc(s.id)}" class="danger">delete</button></td>
      </tr>`,
    )
    .join('');
  return `
    <section>
      <h2>Sessions</h2>
      <table>
        <thead><tr><th>name</th><th>id</th><th>stakeholders</th><th>requirements</th><th></th></tr></thead>
        <tbody>${rows || '<tr><td colspan="5" class="muted">none yet</td></tr>'}</tbody>
      </table>
      <form data-form="create-session" class="row">
        <input name="name" placeholder="session name" required>
        <button type="submit">Create session</button>
      </form>
    </section>
  `;
}

// --- stakeholders ---

export function tierBadge(tier: TierName | null): string {
  if (tier === null) return '<span class="badge badge-excluded">excluded</span>';
  return `<span class="badge badge-${tier}">${tier}</span>`;
}

export function renderStakeholders(session: SessionView): string {
  const rows = session.stakeholders
    .map((s) => {
      const box = (attr: 'power' | 'legitimacy' | 'urgency') =>
        `<label><input type="checkbox" data-attr="${attr}" data-stakeholder="${esc(s.id)}"${
          s[attr] ? ' checked' : ''
        }> ${attr}</label>`;
      return `
      <tr data-row="${esc(s.id)}">
        <td class="mono">${esc(s.id)}</td>
        <td>${esc(s.name)}</td>
        <td>${box('power')}</td>
        <td>${box('legitimacy')}</td>
        <td>${box('urgency')}</td>
        <td>${tierBadge(s.tier)}</td>
      </tr>`;
    })
    .join('');
  return `
    <section>
      <h2>Stakeholders</h2>
      <p class="muted">Attributes decide the salience group: one — latent, two — expectant,
      all three — definitive. No attributes leaves the record out of the analysis.</p>
      <table>
        <thead><tr><th>id</th><th>name</th><th>power</th><th>legitimacy</th><th>urgency</th><th>group</th></tr></thead>
        <tbody>${rows || '<tr><td colspan="6" class="muted">none yet</td></tr>'}</tbody>
      </table>
      <form data-form="add-stakeholder" class="row">
        <input name="id" placeholder="id" required>
        <input name="name" placeholder="display name" required>
        <label><input type="checkbox" name="power"> power</label>
        <label><input type="checkbox" name="legitimacy"> legitimacy</label>
        <label><input type="checkbox" name="urgency"> urgency</label>
        <button type="submit">Add</button>
      </form>
    </section>
  `;
}

// --- comparisons ---

export interface RevisePair {
  group: TierName;
  a: string;
  b: string;
}

export function renderComparisons(
  session: SessionView,
  lastJudgment?: GroupStateView,
  revise?: RevisePair,
): string {
  const groups = TIER_ORDER.map((tier) =>
    renderGroup(session.groups[tier], lastJudgment, revise),
  ).join('');
  return `<section><h2>Pairwise comparisons</h2>${groups}</section>`;
}

function renderGroup(
  group: GroupStateView,
  lastJudgment?: GroupStateView,
  revise?: RevisePair,
): string {
  const title = TIER_LABELS[group.group] ?? group.group;
  const { filled, total } = group.progress;
  let body: string;
  if (group.members.length < 2) {
    body = `<p class="muted">${
      group.members.length === 0 ? 'no members' : 'single member, no comparisons needed'
    }</p>`;
  } else {
    const pair =
      revise && revise.group === group.group ? [revise.a, revise.b] : group.missing[0];
    body = `
      <p class="progress" data-progress="${group.group}">${filled}/${total} pairs</p>
      ${renderJudgmentList(group)}
      ${renderNextPair(group, pair)}
      ${renderResultPanel(group)}
    `;
  }
  const snapped =
    lastJudgment && lastJudgment.group === group.group && lastJudgment.snapped_from
      ? `<p class="banner banner-info">judgment ${esc(lastJudgment.snapped_from)} is off the scale; ` +
        `stored the nearest scale value</p>`
      : '';
  return `<article class="group" data-group="${group.group}"><h3>${esc(title)}</h3>${snapped}${body}</article>`;
}

function renderJudgmentList(group: GroupStateView): string {
  if (group.judgments.length === 0) return '';
  const items = group.judgments
    .map(
      (j) =>
        `<li><span class="mono">${esc(j.a)}</span> vs <span class="mono">${esc(j.b)}</span> = ` +
        `<span class="mono judgment-value">${esc(j.value)}</span> ` +
        `<button class="link" data-revise="${group.group}" data-a="${esc(j.a)}" data-b="${esc(j.b)}">revise</button></li>`,
    )
    .join('');
  return `<ul class="judgments">${items}</ul>`;
}

function renderNextPair(group: GroupStateView, pair: string[] | undefined): string {
  const [a, b] = pair ?? [];
  if (a === undefined || b === undefined) return '';
  const options = scaleOptions()
    .map((o) => `<option value="${esc(o.value)}"${o.value === '1' ? ' selected' : ''}>${esc(o.label)}</option>`)
    .join('');
  return `
    <form data-form="judgment" data-group="${group.group}" data-a="${esc(a)}" data-b="${esc(b)}" class="row next-pair">
      <span>How much more important is <strong class="mono">${esc(a)}</strong> than
      <strong class="mono">${esc(b)}</strong>?</span>
      <select name="judgment" aria-label="judgment">${options}</select>
      <button type="submit">Record</button>
    </form>
  `;
}

function renderResultPanel(group: GroupStateView): string {
  const result = group.result;
  if (!result) return '';
  const weights = group.members
    .map(
      (m) =>
        `<tr><td class="mono">${esc(m)}</td><td>${num(result.member_weights[m] ?? NaN)}</td></tr>`,
    )
    .join('');
  const badge = result.consistent
    ? '<span class="badge badge-ok">consistent</span>'
    : '<span class="badge badge-warn">inconsistent</span>';
  const triad =
    !result.consistent && group.worst_triad
      ? `<p class="banner banner-warn">judgments disagree most around ` +
        `<span class="mono">${group.worst_triad.members.map(esc).join(', ')}</span>; ` +
        `revising one of those pairs helps the most</p>`
      : '';
  return `
    <div class="result">
      <table class="weights">
        <thead><tr><th>member</th><th>weight</th></tr></thead>
        <tbody>${weights}</tbody>
      </table>
      <p>
        λ<sub>max</sub> ${num(result.lambda_max)} ·
        CI ${num(result.consistency_index)} ·
        CR ${num(result.consistency_ratio)} ${badge}
      </p>
      ${triad}
    </div>
  `;
}

// --- scores ---

export function renderScores(session: SessionView): string {
  if (session.requirements.length === 0) {
    return `
      <section>
        <h2>Scores</h2>
        <p class="muted">add requirements first</p>
        ${requirementForm()}
      </section>`;
  }
  const grids = FACTOR_ORDER.map((factor) => renderScoreGrid(session, factor)).join('');
  return `
    <section>
      <h2>Scores</h2>
      ${grids}
      ${requirementForm()}
    </section>
  `;
}

function requirementForm(): string {
  return `
    <form data-form="add-requirement" class="row">
      <input name="id" placeholder="requirement id" required>
      <input name="title" placeholder="title" required>
      <button type="submit">Add requirement</button>
    </form>
  `;
}

function renderScoreGrid(session: SessionView, factor: FactorName): string {
  const grid = session.scores[factor] ?? {};
  let filled = 0;
  const total = TIER_ORDER.length * session.requirements.length;
  const head = session.requirements
    .map((r) => `<th title="${esc(r.title)}">${esc(r.id)}</th>`)
    .join('');
  const rows = TIER_ORDER.map((tier) => {
    const cells = session.requirements
      .map((r) => {
        const current = grid[tier]?.[r.id];
        if (current !== undefined) filled += 1;
        const options = [1, 2, 3, 4, 5]
          .map((k) => {
            const tip = SCORE_LABELS[factor]?.[k] ?? String(k);
            return `<option value="${k}" title="${esc(tip)}"${current === k ? ' selected' : ''}>${k}</option>`;
          })
          .join('');
        return `
        <td>
          <select data-score data-factor="${factor}" data-tier="${tier}" data-rid="${esc(r.id)}"
                  aria-label="${factor} ${tier} ${esc(r.id)}">
            <option value=""${current === undefined ? ' selected' : ''}>–</option>
            ${options}
          </select>
        </td>`;
      })
      .join('');
    return `<tr><th>${esc(TIER_LABELS[tier] ?? tier)}</th>${cells}</tr>`;
  }).join('');
  return `
    <article class="score-grid" data-factor="${factor}">
      <h3>${factor}</h3>
      <p class="meter" data-meter="${factor}">${filled}/${total} cells filled</p>
      <div class="scroll">
        <table>
          <thead><tr><th></th>${head}</tr></thead>
          <tbody>${rows}</tbody>
        </table>
      </div>
    </article>
  `;
}

// --- ranking ---

export function renderRanking(state: AppState): string {
  const ranking = state.ranking;
  if (!ranking) return loading();
  const active = state.whatif;
  const entries: RankingEntryView[] = active ? active.entries : ranking.entries;
  const deltas = active ? active.deltas : null;
  const rows = entries
    .map((e) => {
      const delta = deltas ? (deltas[e.requirement_id] ?? 0) : 0;
      const cls = delta > 0 ? 'delta-up' : delta < 0 ? 'delta-down' : 'delta-zero';
      const text = delta > 0 ? `+${delta}` : String(delta);
      return `
      <tr>
        <td>${e.rank}</td>
        <td class="mono">${esc(e.requirement_id)}</td>
        <td>${esc(e.title)}</td>
        <td>${num(e.value_weight)}</td>
        <td>${num(e.urgency_weight)}</td>
        <td>${num(e.total)}</td>
        <td class="${cls}" data-delta="${esc(e.requirement_id)}">${text}</td>
      </tr>`;
    })
    .join('');
  const ties = (active ? active.ties : ranking.ties)
    .map((cluster) => `<p class="muted">tie on total: ${cluster.map(esc).join(' = ')}</p>`)
    .join('');
  const warnings = ranking.warnings
    .map((w) => `<p class="banner banner-warn">${esc(w)}</p>`)
    .join('');
  return `
    <section>
      <h2>Ranking</h2>
      ${warnings}
      ${renderSliders(state)}
      <table>
        <thead>
          <tr><th>rank</th><th>id</th><th>title</th><th>value</th><th>urgency</th><th>total</th><th>Δ</th></tr>
        </thead>
        <tbody>${rows}</tbody>
      </table>
      ${ties}
    </section>
  `;
}

function renderSliders(state: AppState): string {
  const ranking = state.ranking;
  if (!ranking) return '';
  const sliders = TIER_ORDER.map((tier) => {
    const baseline = ranking.priorities[tier];
    const current = state.sliders?.[tier] ?? baseline;
    return `
    <label class="slider">
      <span>${esc(TIER_LABELS[tier] ?? tier)}</span>
      <input type="range" min="0" max="3" step="0.01" value="${current}"
             data-slider="${tier}" aria-label="${tier} priority">
      <output class="mono" data-slider-value="${tier}">${current}</output>
      <span class="muted">baseline ${num(baseline)}</span>
    </label>`;
  }).join('');
  return `
    <div class="whatif" data-whatif>
      <h3>What-if</h3>
      <p class="muted">Drag to explore hypothetical group priorities. Nothing is saved;
      the Δ column shows how many places each requirement moved.</p>
      ${sliders}
      <button data-reset-whatif class="link">reset to baseline</button>
    </div>
  `;
}
