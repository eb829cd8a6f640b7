// Scripted explorer loop against the live service: load the sample table,
// build the theory structure, zoom into its children, run the
// two-proceedings difference and read the delta panel, then switch the view
// twice and land back on the initial render.

import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';
import { beforeAll, describe, expect, it } from 'vitest';

import { ExplorerApp } from '../src/app.js';
import { BASE } from './service.setup.js';

const FIXTURES = join(
  dirname(fileURLToPath(import.meta.url)), '..', '..', 'tests', 'fixtures',
);

const csv = (name: string) => readFileSync(join(FIXTURES, name), 'utf-8');
const THEORY_DOMAINS = JSON.stringify({
  Theory: ['DT', 'RPA', 'R-A', 'LR', 'RFH', 'GC', 'RA', 'FCA', 'DR'],
});

// unique suffix so a re-run against a warm service never collides
const RUN = Date.now().toString(36);
const T1 = `table1-${RUN}`;
const P05 = `rsfdgrc2005-${RUN}`;
const P06 = `rskt2006-${RUN}`;

let app: ExplorerApp;

function input(id: string): HTMLInputElement {
  return document.getElementById(id) as HTMLInputElement;
}

function select(id: string): HTMLSelectElement {
  return document.getElementById(id) as HTMLSelectElement;
}

function button(id: string): HTMLButtonElement {
  return document.getElementById(id) as HTMLButtonElement;
}

function clickNode(id: string): void {
  const node = document.querySelector(`[data-id="${id}"]`);
  expect(node, `node ${id} rendered`).toBeTruthy();
  node!.dispatchEvent(new MouseEvent('click', { bubbles: true }));
}

async function uploadTable(name: string, file: string, domains = ''): Promise<void> {
  input('tbl-name').value = name;
  (document.getElementById('tbl-csv') as HTMLTextAreaElement).value = csv(file);
  (document.getElementById('tbl-domains') as HTMLTextAreaElement).value = domains;
  button('tbl-upload').click();
  await app.flush();
  expect(app.lastError).toBeNull();
}

async function buildStructure(table: string, attribute: string): Promise<void> {
  select('build-table').value = table;
  input('build-attr').value = attribute;
  button('build-run').click();
  await app.flush();
  expect(app.lastError).toBeNull();
}

function renderedNodes(): Element[] {
  return [...document.querySelectorAll('#svg-holder [data-id]')];
}

function selectedLabels(): Set<string> {
  const doc = app.state.doc!;
  return new Set(
    doc.nodes.filter((n) => app.state.selected.has(n.id)).map((n) => n.label),
  );
}

describe('explorer loop', () => {
  beforeAll(() => {
    const root = document.createElement('div');
    document.body.appendChild(root);
    app = new ExplorerApp(root, BASE);
  });

  it('loads the sample table and builds the theory structure', async () => {
    await uploadTable(T1, 'table1.csv');
    await buildStructure(T1, 'Theory');
    expect(app.state.gksName).toBe(`${T1}:Theory`);
    const nodes = renderedNodes();
    expect(nodes.length).toBe(6);
    const ranks = new Set(nodes.map((n) => n.getAttribute('data-row')));
    expect(ranks.size).toBe(2);
  });

  it('node click selects and fills the extension side panel', async () => {
    clickNode('n1');
    await app.flush();
    expect([...app.state.selected]).toEqual(['n1']);
    const panel = document.getElementById('ext-panel')!;
    expect(panel.textContent).toContain('Theory (7)');
    expect(panel.textContent).toContain('No.97');
  });

  it('zoom-in moves the selection to the five children', async () => {
    button('zoom-in').click();
    await app.flush();
    expect(app.lastError).toBeNull();
    expect(app.state.selected.size).toBe(5);
    expect(selectedLabels()).toEqual(new Set(['R-A', 'RFH', 'LR', 'DR', 'FCA']));
    const panel = document.getElementById('ext-panel')!;
    expect(panel.querySelectorAll('.ext-entry').length).toBe(5);
  });

  it('undo replays history back to the previous selection', async () => {
    button('undo').click();
    await app.flush();
    expect([...app.state.selected]).toEqual(['n1']);
    // the replayed view matches a fresh fetch of the same structure
    const fresh = await app.api.getGks(app.state.gksName!);
    expect(app.state.doc).toEqual(fresh);
  });

  it('difference of the two proceedings lists LR and RA in the delta panel', async () => {
    await uploadTable(P05, 'rsfdgrc2005.csv', THEORY_DOMAINS);
    await uploadTable(P06, 'rskt2006.csv', THEORY_DOMAINS);
    await buildStructure(P05, 'Theory');
    await buildStructure(P06, 'Theory');
    select('wb-left').value = `${P05}:Theory`;
    select('wb-right').value = `${P06}:Theory`;
    select('wb-op').value = 'difference';
    button('wb-run').click();
    await app.flush();
    expect(app.lastError).toBeNull();
    const kept = document.querySelector('#delta-panel .delta-kept')!;
    expect(kept.textContent).toContain('LR');
    expect(kept.textContent).toContain('RA');
    // the loaded result renders the two surplus children
    const labels = app.state.doc!.nodes.map((n) => n.label).sort();
    expect(labels).toEqual(['LR', 'RA', 'Theory']);
  });

  it('switch-view twice restores the initial render', async () => {
    select('gks-list').value = `${T1}:Theory`;
    button('gks-load').click();
    await app.flush();
    const before = document.getElementById('svg-holder')!.innerHTML;
    button('switch-view').click();
    await app.flush();
    expect(app.lastError).toBeNull();
    const flipped = document.getElementById('svg-holder')!.innerHTML;
    expect(flipped).not.toBe(before);
    expect(flipped).toContain('stroke-dasharray');
    button('switch-view').click();
    await app.flush();
    expect(document.getElementById('svg-holder')!.innerHTML).toBe(before);
  });

  it('errors surface in the banner without discarding view state', async () => {
    const docBefore = app.state.doc;
    await app.zoom('out'); // empty selection: the service rejects it
    expect(app.lastError).not.toBeNull();
    const banner = document.getElementById('banner')!;
    expect(banner.hidden).toBe(false);
    expect(banner.textContent).toContain('MixedLevels');
    expect(app.state.doc).toBe(docBefore);
  });

  it('polling refreshes after out-of-band mutations', async () => {
    const name = app.state.gksName!;
    // mutate outside the app: switch the structure's view directly
    const doc = app.state.doc!;
    const upper = doc.nodes.filter((n) => n.level === 1).map((n) => n.id);
    const lower = doc.nodes.filter((n) => n.level === 2).map((n) => n.id);
    await app.api.switchView(name, upper, lower);
    await app.pollOnce();
    expect(app.state.doc!.edges.every((e) => e.relation === 'view-of')).toBe(true);
    // restore for any later runs
    await app.api.switchView(name, lower, upper);
  });
});
