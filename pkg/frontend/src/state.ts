// View state: which structure is on screen, the selection, the level focus,
// and a replayable history of navigation actions for undo.
//
// Mutating operations (loading another structure, combination results,
// view switches) change the server-side registry and therefore reset the
// history; only navigation actions (select / zoom) are replayable.

import type { GksApi } from './api.js';
import type { GksDoc } from './types.js';

export type NavAction =
  | { kind: 'select'; nodes: string[] }
  | { kind: 'zoom'; direction: 'in' | 'out' };

export class ViewState {
  gksName: string | null = null;
  revision = 0;
  doc: GksDoc | null = null;
  selected = new Set<string>();
  levelFocus = 1;
  history: NavAction[] = [];

  constructor(private readonly api: GksApi) {}

  /** Load (or reload) a structure; wipes selection and history. */
  async load(name: string): Promise<GksDoc> {
    const doc = await this.api.getGks(name);
    this.gksName = name;
    this.revision = await this.api.revision();
    this.doc = doc;
    this.selected = new Set();
    this.levelFocus = 1;
    this.history = [];
    return doc;
  }

  /** Re-fetch the current structure without touching selection history. */
  async refresh(): Promise<void> {
    if (!this.gksName) return;
    this.doc = await this.api.getGks(this.gksName);
    this.revision = await this.api.revision();
    const known = new Set(this.doc.nodes.map((n) => n.id));
    this.selected = new Set([...this.selected].filter((id) => known.has(id)));
  }

  select(nodes: string[]): void {
    this.selected = new Set(nodes);
    this.syncFocus();
    this.history.push({ kind: 'select', nodes: [...nodes] });
  }

  toggle(node: string): void {
    const next = new Set(this.selected);
    if (next.has(node)) {
      next.delete(node);
    } else {
      next.add(node);
    }
    this.select([...next]);
  }

  /** Ask the service for the adjacent level of the selection. */
  async zoom(direction: 'in' | 'out'): Promise<string[]> {
    if (!this.gksName) throw new Error('no structure loaded');
    const result = await this.api.zoom(this.gksName, direction, [...this.selected]);
    this.selected = new Set(result);
    this.syncFocus();
    this.history.push({ kind: 'zoom', direction });
    return result;
  }

  /** Drop the last navigation action and replay the rest from a fresh fetch. */
  async undo(): Promise<void> {
    if (!this.gksName) return;
    const actions = this.history.slice(0, -1);
    await this.load(this.gksName);
    for (const action of actions) {
      if (action.kind === 'select') {
        this.select(action.nodes);
      } else {
        await this.zoom(action.direction);
      }
    }
  }

  private syncFocus(): void {
    if (!this.doc || this.selected.size === 0) return;
    const levels = new Set(
      this.doc.nodes
        .filter((n) => this.selected.has(n.id))
        .map((n) => n.level ?? 1),
    );
    if (levels.size === 1) {
      this.levelFocus = [...levels][0] ?? this.levelFocus;
    }
  }
}
