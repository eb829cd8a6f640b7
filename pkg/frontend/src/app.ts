// Explorer application: toolbar for loading tables and building structures,
// the ranked structure view with selection, zoom / view-switch / undo
// controls, and the operation workbench with its delta panel.
//
// Every action funnels through run(), which serializes in-flight work (at
// most one mutation outstanding), surfaces failures in a retry banner
// without discarding view state, and lets tests await flush().

import { ApiError, GksApi } from './api.js';
import { maxLevel, nodesAtLevel } from './layout.js';
import { renderDeltaPanel, renderExtensionPanel, renderStructure } from './render.js';
import { ViewState } from './state.js';
import type { CombineOp, GksDoc, StructureDelta } from './types.js';

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) {
    node.setAttribute(k, v);
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

export class ExplorerApp {
  readonly api: GksApi;
  readonly state: ViewState;
  lastError: ApiError | Error | null = null;

  private pending: Promise<void> = Promise.resolve();
  private retryThunk: (() => Promise<void>) | null = null;
  private poller: ReturnType<typeof setInterval> | null = null;

  // panels
  private banner!: HTMLElement;
  private svgHolder!: HTMLElement;
  private extPanel!: HTMLElement;
  private deltaPanel!: HTMLElement;
  private gksList!: HTMLSelectElement;
  private tableList!: HTMLSelectElement;
  private wbLeft!: HTMLSelectElement;
  private wbRight!: HTMLSelectElement;

  constructor(readonly root: HTMLElement, apiBase: string) {
    this.api = new GksApi(apiBase);
    this.state = new ViewState(this.api);
    this.buildSkeleton();
  }

  /** Await all queued actions (tests hook in here). */
  flush(): Promise<void> {
    return this.pending;
  }

  startPolling(intervalMs = 1500): void {
    this.poller = setInterval(() => void this.pollOnce(), intervalMs);
  }

  stopPolling(): void {
    if (this.poller) clearInterval(this.poller);
    this.poller = null;
  }

  /** One revision probe: refresh the current structure if the registry moved. */
  async pollOnce(): Promise<void> {
    if (!this.state.gksName) return;
    try {
      const revision = await this.api.revision();
      if (revision !== this.state.revision) {
        await this.state.refresh();
        this.state.revision = revision;
        this.redraw();
      }
    } catch {
      // polling is best-effort; real actions surface their own errors
    }
  }

  private run(thunk: () => Promise<void>): Promise<void> {
    this.pending = this.pending.then(async () => {
      try {
        await thunk();
        this.lastError = null;
        this.retryThunk = null;
        this.banner.hidden = true;
      } catch (err) {
        this.lastError = err as Error;
        this.retryThunk = thunk;
        this.showBanner(err as Error);
      }
    });
    return this.pending;
  }

  private showBanner(err: Error): void {
    const code = err instanceof ApiError ? err.code : 'connection';
    this.banner.hidden = false;
    this.banner.querySelector('.banner-text')!.textContent = `${code}: ${err.message}`;
  }

  // --- actions ---------------------------------------------------------

  uploadTable(name: string, csv: string, domainsJson = ''): Promise<void> {
    return this.run(async () => {
      const domains = domainsJson.trim()
        ? (JSON.parse(domainsJson) as Record<string, string[]>)
        : undefined;
      await this.api.uploadTable(name, csv, domains);
      await this.refreshLists();
    });
  }

  buildStructure(table: string, attribute: string): Promise<void> {
    return this.run(async () => {
      const summary = await this.api.build(table, attribute);
      await this.refreshLists();
      await this.state.load(summary.name);
      this.redraw();
    });
  }

  loadStructure(name: string): Promise<void> {
    return this.run(async () => {
      await this.state.load(name);
      this.redraw();
    });
  }

  selectNode(id: string): Promise<void> {
    return this.run(async () => {
      this.state.toggle(id);
      this.redraw();
    });
  }

  zoom(direction: 'in' | 'out'): Promise<void> {
    return this.run(async () => {
      await this.state.zoom(direction);
      this.redraw();
    });
  }

  undo(): Promise<void> {
    return this.run(async () => {
      await this.state.undo();
      this.redraw();
    });
  }

  /** Re-orient the focus level pair; the service swaps the two families. */
  switchView(): Promise<void> {
    return this.run(async () => {
      const doc = this.state.doc;
      const name = this.state.gksName;
      if (!doc || !name) return;
      const focus = Math.min(this.state.levelFocus, maxLevel(doc) - 1) || 1;
      const upper = nodesAtLevel(doc, focus);
      const lower = nodesAtLevel(doc, focus + 1);
      await this.api.switchView(name, upper, lower);
      await this.state.refresh();
      this.state.history = []; // registry changed; navigation history is stale
      this.redraw();
    });
  }

  runOperation(op: CombineOp, left: string, right: string): Promise<void> {
    return this.run(async () => {
      const [leftDoc, rightDoc] = await Promise.all([
        this.api.getGks(left),
        this.api.getGks(right),
      ]);
      const summary = await this.api.combine(op, left, right);
      this.showDelta(summary.delta ?? null, leftDoc, rightDoc);
      await this.refreshLists();
      await this.state.load(summary.name);
      this.redraw();
    });
  }

  retry(): Promise<void> {
    const thunk = this.retryThunk;
    if (!thunk) return Promise.resolve();
    this.retryThunk = null;
    return this.run(thunk);
  }

  // --- rendering --------------------------------------------------------

  private redraw(): void {
    const doc = this.state.doc;
    if (doc) {
      renderStructure(this.svgHolder, doc, this.state.selected, (id) =>
        void this.selectNode(id),
      );
    } else {
      this.svgHolder.replaceChildren();
    }
    renderExtensionPanel(this.extPanel, doc, this.state.selected);
  }

  private showDelta(
    delta: StructureDelta | null,
    leftDoc: GksDoc,
    rightDoc: GksDoc,
  ): void {
    const labels = (d: GksDoc) => new Map(d.nodes.map((n) => [n.id, n.label]));
    renderDeltaPanel(this.deltaPanel, delta, labels(leftDoc), labels(rightDoc));
  }

  private async refreshLists(): Promise<void> {
    const [tables, gks] = await Promise.all([this.api.listTables(), this.api.listGks()]);
    const fill = (select: HTMLSelectElement, names: string[]) => {
      const current = select.value;
      select.replaceChildren(
        ...names.map((n) => el('option', { value: n }, n)),
      );
      if (names.includes(current)) select.value = current;
    };
    fill(this.tableList, tables.tables.map((t) => t.name));
    const names = gks.gks.map((g) => g.name);
    fill(this.gksList, names);
    fill(this.wbLeft, names);
    fill(this.wbRight, names);
  }

  // --- skeleton ---------------------------------------------------------

  private buildSkeleton(): void {
    this.banner = el('div', { id: 'banner', class: 'banner' });
    this.banner.hidden = true;
    this.banner.appendChild(el('span', { class: 'banner-text' }));
    const retry = el('button', { id: 'retry' }, 'retry');
    retry.addEventListener('click', () => void this.retry());
    this.banner.appendChild(retry);

    const toolbar = el('div', { id: 'toolbar' });
    const tblName = el('input', { id: 'tbl-name', placeholder: 'table name' });
    const tblCsv = el('textarea', { id: 'tbl-csv', placeholder: 'CSV content' });
    const tblDomains = el('textarea', {
      id: 'tbl-domains',
      placeholder: 'declared domains JSON (optional)',
    });
    const tblUpload = el('button', { id: 'tbl-upload' }, 'load table');
    tblUpload.addEventListener('click', () =>
      void this.uploadTable(tblName.value, tblCsv.value, tblDomains.value),
    );
    this.tableList = el('select', { id: 'build-table' });
    const attr = el('input', { id: 'build-attr', placeholder: 'attribute' });
    const buildRun = el('button', { id: 'build-run' }, 'build structure');
    buildRun.addEventListener('click', () =>
      void this.buildStructure(this.tableList.value, attr.value),
    );
    this.gksList = el('select', { id: 'gks-list' });
    const gksLoad = el('button', { id: 'gks-load' }, 'open');
    gksLoad.addEventListener('click', () => void this.loadStructure(this.gksList.value));
    toolbar.append(
      tblName, tblCsv, tblDomains, tblUpload,
      this.tableList, attr, buildRun, this.gksList, gksLoad,
    );

    const nav = el('div', { id: 'nav' });
    const zoomIn = el('button', { id: 'zoom-in' }, 'zoom in');
    zoomIn.addEventListener('click', () => void this.zoom('in'));
    const zoomOut = el('button', { id: 'zoom-out' }, 'zoom out');
    zoomOut.addEventListener('click', () => void this.zoom('out'));
    const switchBtn = el('button', { id: 'switch-view' }, 'switch view');
    switchBtn.addEventListener('click', () => void this.switchView());
    const undoBtn = el('button', { id: 'undo' }, 'undo');
    undoBtn.addEventListener('click', () => void this.undo());
    nav.append(zoomIn, zoomOut, switchBtn, undoBtn);

    const workbench = el('div', { id: 'workbench' });
    this.wbLeft = el('select', { id: 'wb-left' });
    this.wbRight = el('select', { id: 'wb-right' });
    const wbOp = el('select', { id: 'wb-op' });
    for (const op of ['union', 'intersect', 'difference']) {
      wbOp.appendChild(el('option', { value: op }, op));
    }
    const wbRun = el('button', { id: 'wb-run' }, 'run');
    wbRun.addEventListener('click', () =>
      void this.runOperation(
        wbOp.value as CombineOp,
        this.wbLeft.value,
        this.wbRight.value,
      ),
    );
    workbench.append(this.wbLeft, this.wbRight, wbOp, wbRun);

    this.svgHolder = el('div', { id: 'svg-holder' });
    this.extPanel = el('aside', { id: 'ext-panel' });
    this.deltaPanel = el('aside', { id: 'delta-panel' });

    this.root.append(
      this.banner, toolbar, nav, workbench,
      this.svgHolder, this.extPanel, this.deltaPanel,
    );
  }
}

/** Browser bootstrap; tests construct ExplorerApp directly. */
export function mount(root: HTMLElement, apiBase = ''): ExplorerApp {
  const app = new ExplorerApp(root, apiBase);
  app.startPolling();
  void app.flush();
  return app;
}
