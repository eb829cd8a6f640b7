// Typed client for the gks service. Every extension, level and delta shown
// in the UI comes from these calls; the explorer never derives set semantics
// on its own.

import type {
  CombineOp,
  ErrorBody,
  GksDoc,
  GksSummary,
  TableSummary,
} from './types.js';

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly detail: Record<string, unknown> = {},
  ) {
    super(message);
  }
}

async function fail(resp: Response): Promise<never> {
  let body: ErrorBody | null = null;
  try {
    body = (await resp.json()) as ErrorBody;
  } catch {
    // non-JSON error body; fall through to a generic error
  }
  throw new ApiError(
    resp.status,
    body?.code ?? `http-${resp.status}`,
    body?.message ?? resp.statusText,
    body?.detail ?? {},
  );
}

export class GksApi {
  constructor(readonly base: string) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await fetch(this.base + path, init);
    if (!resp.ok) {
      await fail(resp);
    }
    return (await resp.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(body),
    });
  }

  uploadTable(
    name: string,
    csv: string,
    domains?: Record<string, string[]>,
  ): Promise<{ name: string; revision: number; objects: number }> {
    return this.post('/tables', { name, csv, domains: domains ?? {} });
  }

  listTables(): Promise<{ revision: number; tables: TableSummary[] }> {
    return this.request('/tables');
  }

  listGks(): Promise<{ revision: number; gks: GksSummary[] }> {
    return this.request('/gks');
  }

  getGks(name: string): Promise<GksDoc> {
    return this.request(`/gks/${encodeURIComponent(name)}`);
  }

  revision(): Promise<number> {
    return this.listGks().then((r) => r.revision);
  }

  build(table: string, attribute: string, name?: string): Promise<GksSummary> {
    return this.post('/gks/build', { table, attribute, name });
  }

  combine(op: CombineOp, left: string, right: string, name?: string): Promise<GksSummary> {
    return this.post(`/gks/${op}`, { left, right, name });
  }

  generalize(
    inputs: string[],
    shared: string,
    label: string,
    name?: string,
  ): Promise<GksSummary> {
    return this.post('/gks/generalize', { inputs, shared, label, name });
  }

  product(
    left: string,
    right: string,
    options: {
      leftChildren?: string[];
      rightChildren?: string[];
      shared?: string;
      sharedLabel?: string;
      name?: string;
    } = {},
  ): Promise<GksSummary> {
    return this.post('/gks/product', {
      left,
      right,
      left_children: options.leftChildren ?? null,
      right_children: options.rightChildren ?? null,
      shared: options.shared ?? null,
      shared_label: options.sharedLabel ?? null,
      name: options.name,
    });
  }

  zoom(name: string, direction: 'in' | 'out', nodes: string[]): Promise<string[]> {
    return this.post<{ nodes: string[] }>(
      `/gks/${encodeURIComponent(name)}/zoom`,
      { direction, nodes },
    ).then((r) => r.nodes);
  }

  switchView(name: string, upper: string[], lower: string[]): Promise<GksSummary> {
    return this.post(`/gks/${encodeURIComponent(name)}/switch-view`, { upper, lower });
  }

  evalFormula(table: string, formula: string): Promise<string[]> {
    return this.post<{ extension: string[] }>('/eval', { table, formula }).then(
      (r) => r.extension,
    );
  }
}
