// Rank layout by granularity level: coarse levels sit at the bottom and each
// finer level stacks one row up, mirroring the structures' semantics (no
// force-directed drift).

import type { GksDoc } from './types.js';

export interface NodePosition {
  x: number;
  y: number;
  row: number;
}

export interface Layout {
  width: number;
  height: number;
  positions: Map<string, NodePosition>;
  rows: number;
}

const H_GAP = 120;
const V_GAP = 90;
const MARGIN = 60;

/** Level of a node; unleveled structures collapse to a single row. */
function levelOf(doc: GksDoc, id: string): number {
  const node = doc.nodes.find((n) => n.id === id);
  return node?.level ?? 1;
}

export function layoutByLevel(doc: GksDoc): Layout {
  const levels = doc.nodes.map((n) => n.level ?? 1);
  const maxLevel = levels.length ? Math.max(...levels) : 1;
  const byLevel = new Map<number, string[]>();
  for (const node of doc.nodes) {
    const lvl = node.level ?? 1;
    const bucket = byLevel.get(lvl) ?? [];
    bucket.push(node.id);
    byLevel.set(lvl, bucket);
  }
  const widest = Math.max(1, ...[...byLevel.values()].map((ids) => ids.length));
  const width = widest * H_GAP + 2 * MARGIN;
  const height = maxLevel * V_GAP + 2 * MARGIN;
  const positions = new Map<string, NodePosition>();
  for (const [lvl, ids] of byLevel) {
    // coarse (level 1) at the bottom: larger y in screen coordinates
    const y = height - MARGIN - (lvl - 1) * V_GAP;
    const span = ids.length * H_GAP;
    const left = (width - span) / 2 + H_GAP / 2;
    ids.forEach((id, i) => {
      positions.set(id, { x: left + i * H_GAP, y, row: lvl });
    });
  }
  return { width, height, positions, rows: byLevel.size };
}

/** Node ids sitting on the given level, in document order. */
export function nodesAtLevel(doc: GksDoc, level: number): string[] {
  return doc.nodes.filter((n) => (n.level ?? 1) === level).map((n) => n.id);
}

export function maxLevel(doc: GksDoc): number {
  return doc.nodes.length ? Math.max(...doc.nodes.map((n) => n.level ?? 1)) : 0;
}

export { levelOf };
