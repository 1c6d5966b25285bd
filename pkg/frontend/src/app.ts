// DOM binding: event delegation over the rendered HTML, one re-render per
// state change. Mutating calls are chained per session so the UI never has
// two writes in flight (the service would serialize them anyway; this keeps
// the screen from flickering through stale intermediate states).

import { ApiClient, ApiError, OfflineError } from './api.js';
import { renderShell } from './screens.js';
import { initialState, type AppState, type ScreenName, type TierName } from './state.js';
import { TIER_ORDER } from './types.js';

const WHATIF_DEBOUNCE_MS = 150;

export class App {
  private state: AppState = initialState();
  private queue: Promise<unknown> = Promise.resolve();
  private whatifTimer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly root: HTMLElement,
  ) {
    root.addEventListener('click', (e) => this.onClick(e));
    root.addEventListener('submit', (e) => this.onSubmit(e));
    root.addEventListener('change', (e) => this.onChange(e));
    root.addEventListener('input', (e) => this.onInput(e));
  }

  async start(): Promise<void> {
    await this.refreshSessions();
  }

  private render(): void {
    this.root.innerHTML = renderShell(this.state);
  }

  private update(patch: Partial<AppState>): void {
    this.state = { ...this.state, ...patch };
    this.render();
  }

  // serialize mutations; surface failures as banners
  private enqueue(work: () => Promise<void>): void {
    this.queue = this.queue.then(work).catch((exc) => this.fail(exc));
  }

  private fail(exc: unknown): void {
    if (exc instanceof ApiError) {
      let text = `${exc.code}: ${exc.message}`;
      const details = exc.details as { errors?: string[] } | null;
      if (details?.errors?.length) text += ` — ${details.errors.join('; ')}`;
      this.update({ banner: { kind: 'error', text } });
    } else if (exc instanceof OfflineError) {
      this.update({
        banner: { kind: 'offline', text: 'service unreachable — check that it is running' },
      });
    } else {
      this.update({ banner: { kind: 'error', text: String(exc) } });
    }
  }

  // --- data loading ---

  private async refreshSessions(): Promise<void> {
    try {
      const { sessions } = await this.api.listSessions();
      this.update({ sessions, banner: null });
    } catch (exc) {
      this.fail(exc);
    }
  }

  private async refreshSession(): Promise<void> {
    if (!this.state.sid) return;
    const session = await this.api.getSession(this.state.sid);
    this.update({ session, banner: null });
  }

  private async enterRanking(): Promise<void> {
    if (!this.state.sid) return;
    const sid = this.state.sid;
    try {
      const ranking = await this.api.getRanking(sid);
      const sliders: Partial<Record<TierName, number>> = {};
      for (const tier of TIER_ORDER) sliders[tier] = ranking.priorities[tier];
      // baseline what-if: service confirms zero deltas rather than the UI
      // assuming them
      const whatif = await this.api.whatIf(sid, { priorities: sliders });
      this.update({ screen: 'ranking', ranking, whatif, sliders, banner: null });
    } catch (exc) {
      this.update({ screen: 'ranking', ranking: null, whatif: null, sliders: null });
      this.fail(exc);
    }
  }

  private async show(screen: ScreenName): Promise<void> {
    if (screen === 'sessions') {
      this.update({ screen });
      await this.refreshSessions();
      return;
    }
    if (screen === 'ranking') {
      await this.enterRanking();
      return;
    }
    this.update({ screen });
    try {
      await this.refreshSession();
    } catch (exc) {
      this.fail(exc);
    }
  }

  // --- events ---

  private onClick(e: Event): void {
    const el = (e.target as HTMLElement).closest<HTMLElement>(
      '[data-nav],[data-open-session],[data-delete-session],[data-revise],[data-reset-whatif]',
    );
    if (!el) return;
    if (el.dataset.nav) {
      void this.show(el.dataset.nav as ScreenName);
    } else if (el.dataset.openSession) {
      const sid = el.dataset.openSession;
      this.update({ sid, session: null, ranking: null, whatif: null, sliders: null });
      void this.show('stakeholders');
    } else if (el.dataset.deleteSession) {
      const sid = el.dataset.deleteSession;
      this.enqueue(async () => {
        await this.api.deleteSession(sid);
        if (this.state.sid === sid) {
          this.update({ sid: null, session: null, ranking: null, whatif: null });
        }
        await this.refreshSessions();
      });
    } else if (el.dataset.revise) {
      this.update({
        revise: {
          group: el.dataset.revise as TierName,
          a: el.dataset.a ?? '',
          b: el.dataset.b ?? '',
        },
      });
    } else if (el.dataset.resetWhatif !== undefined) {
      void this.enterRanking();
    }
  }

  private onSubmit(e: Event): void {
    const form = e.target as HTMLFormElement;
    if (!form.dataset.form) return;
    e.preventDefault();
    const data = new FormData(form);
    const sid = this.state.sid;
    switch (form.dataset.form) {
      case 'create-session':
        this.enqueue(async () => {
          const created = await this.api.createSession(String(data.get('name') ?? ''));
          this.update({ sid: created.id });
          await this.refreshSessions();
          await this.show('stakeholders');
        });
        break;
      case 'add-stakeholder':
        if (!sid) return;
        this.enqueue(async () => {
          await this.api.putStakeholder(sid, String(data.get('id') ?? ''), {
            name: String(data.get('name') ?? ''),
            power: data.has('power'),
            legitimacy: data.has('legitimacy'),
            urgency: data.has('urgency'),
          });
          await this.refreshSession();
        });
        break;
      case 'add-requirement':
        if (!sid) return;
        this.enqueue(async () => {
          await this.api.putRequirement(
            sid,
            String(data.get('id') ?? ''),
            String(data.get('title') ?? ''),
          );
          await this.refreshSession();
        });
        break;
      case 'judgment': {
        if (!sid) return;
        const { group, a, b } = form.dataset;
        const judgment = String(data.get('judgment') ?? '1');
        if (!group || !a || !b) return;
        this.enqueue(async () => {
          const result = await this.api.putJudgment(sid, group as TierName, a, b, judgment);
          this.state = { ...this.state, lastJudgment: result, revise: undefined };
          await this.refreshSession();
        });
        break;
      }
    }
  }

  private onChange(e: Event): void {
    const el = e.target as HTMLElement;
    const sid = this.state.sid;
    if (!sid) return;
    if (el instanceof HTMLInputElement && el.dataset.attr && el.dataset.stakeholder) {
      const record = this.state.session?.stakeholders.find(
        (s) => s.id === el.dataset.stakeholder,
      );
      if (!record) return;
      const attrs = {
        name: record.name,
        power: record.power,
        legitimacy: record.legitimacy,
        urgency: record.urgency,
      };
      attrs[el.dataset.attr as 'power' | 'legitimacy' | 'urgency'] = el.checked;
      this.enqueue(async () => {
        await this.api.putStakeholder(sid, record.id, attrs);
        await this.refreshSession();
      });
    } else if (el instanceof HTMLSelectElement && el.dataset.score !== undefined) {
      const { factor, tier, rid } = el.dataset;
      const score = parseInt(el.value, 10);
      if (!factor || !tier || !rid || Number.isNaN(score)) return;
      this.enqueue(async () => {
        await this.api.putScore(
          sid,
          factor as 'value' | 'urgency',
          tier as TierName,
          rid,
          score,
        );
        await this.refreshSession();
      });
    }
  }

  private onInput(e: Event): void {
    const el = e.target as HTMLElement;
    if (!(el instanceof HTMLInputElement) || !el.dataset.slider) return;
    const tier = el.dataset.slider as TierName;
    const value = Number(el.value);
    // update the readout without a full re-render so the drag stays smooth
    const out = this.root.querySelector(`[data-slider-value="${tier}"]`);
    if (out) out.textContent = el.value;
    this.state = {
      ...this.state,
      sliders: { ...(this.state.sliders ?? {}), [tier]: value },
    };
    if (this.whatifTimer) clearTimeout(this.whatifTimer);
    this.whatifTimer = setTimeout(() => void this.runWhatIf(), WHATIF_DEBOUNCE_MS);
  }

  private async runWhatIf(): Promise<void> {
    const sid = this.state.sid;
    const sliders = this.state.sliders;
    if (!sid || !sliders) return;
    try {
      const whatif = await this.api.whatIf(sid, { priorities: sliders });
      this.update({ whatif, banner: null });
    } catch (exc) {
      this.fail(exc);
    }
  }
}
