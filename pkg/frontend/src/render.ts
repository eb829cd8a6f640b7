// DOM rendering: SVG structure view ranked by level, the extension side
// panel, and the operation delta panel.

import { layoutByLevel } from './layout.js';
import type { GksDoc, StructureDelta } from './types.js';

const SVG_NS = 'http://www.w3.org/2000/svg';

export function renderStructure(
  holder: HTMLElement,
  doc: GksDoc,
  selected: ReadonlySet<string>,
  onNodeClick: (id: string) => void,
): void {
  const layout = layoutByLevel(doc);
  const svg = document.createElementNS(SVG_NS, 'svg');
  svg.setAttribute('viewBox', `0 0 ${layout.width} ${layout.height}`);
  svg.setAttribute('width', String(layout.width));
  svg.setAttribute('height', String(layout.height));

  for (const edge of doc.edges) {
    const from = layout.positions.get(edge.child);
    const to = layout.positions.get(edge.parent);
    if (!from || !to) continue;
    const line = document.createElementNS(SVG_NS, 'line');
    line.setAttribute('x1', String(from.x));
    line.setAttribute('y1', String(from.y));
    line.setAttribute('x2', String(to.x));
    line.setAttribute('y2', String(to.y));
    line.setAttribute('class', `gks-edge rel-${edge.relation}`);
    if (edge.relation === 'view-of') {
      line.setAttribute('stroke-dasharray', '6 3');
    }
    svg.appendChild(line);
  }

  for (const node of doc.nodes) {
    const pos = layout.positions.get(node.id);
    if (!pos) continue;
    const group = document.createElementNS(SVG_NS, 'g');
    group.setAttribute('class', selected.has(node.id) ? 'gks-node selected' : 'gks-node');
    group.setAttribute('data-id', node.id);
    group.setAttribute('data-row', String(pos.row));
    group.setAttribute('transform', `translate(${pos.x},${pos.y})`);
    const circle = document.createElementNS(SVG_NS, 'circle');
    circle.setAttribute('r', '18');
    group.appendChild(circle);
    const text = document.createElementNS(SVG_NS, 'text');
    text.setAttribute('y', '34');
    text.setAttribute('text-anchor', 'middle');
    text.textContent = node.label;
    group.appendChild(text);
    group.addEventListener('click', () => onNodeClick(node.id));
    svg.appendChild(group);
  }

  holder.replaceChildren(svg);
}

export function renderExtensionPanel(
  panel: HTMLElement,
  doc: GksDoc | null,
  selected: ReadonlySet<string>,
): void {
  panel.replaceChildren();
  if (!doc) return;
  for (const node of doc.nodes) {
    if (!selected.has(node.id)) continue;
    const block = document.createElement('div');
    block.className = 'ext-entry';
    const head = document.createElement('strong');
    head.textContent = `${node.label} (${node.extension.length})`;
    const body = document.createElement('div');
    body.textContent = node.extension.join(', ');
    block.append(head, body);
    panel.appendChild(block);
  }
}

function labelFor(labels: Map<string, string>, id: string): string {
  const label = labels.get(id);
  return label ? `${label} [${id}]` : id;
}

export function renderDeltaPanel(
  panel: HTMLElement,
  delta: StructureDelta | null,
  leftLabels: Map<string, string>,
  rightLabels: Map<string, string>,
): void {
  panel.replaceChildren();
  if (!delta) return;
  const section = (title: string, cls: string, rows: string[]) => {
    const div = document.createElement('div');
    div.className = `delta-${cls}`;
    const head = document.createElement('strong');
    head.textContent = title;
    div.appendChild(head);
    const list = document.createElement('ul');
    for (const row of rows) {
      const item = document.createElement('li');
      item.textContent = row;
      list.appendChild(item);
    }
    div.appendChild(list);
    panel.appendChild(div);
  };
  section(
    'merged',
    'merged',
    delta.merged.map(
      ([l, r]) => `${labelFor(leftLabels, l)} = ${labelFor(rightLabels, r)}`,
    ),
  );
  const sided = (rows: [string, string][]) =>
    rows.map(([side, id]) =>
      side === 'left'
        ? `left ${labelFor(leftLabels, id)}`
        : `right ${labelFor(rightLabels, id)}`,
    );
  section('kept', 'kept', sided(delta.kept));
  section('dropped', 'dropped', sided(delta.dropped));
}
