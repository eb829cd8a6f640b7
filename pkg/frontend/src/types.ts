// Wire types for the gks HTTP service.

export interface GksNode {
  id: string;
  label: string;
  intension: string;
  extension: string[];
  level?: number;
}

export interface GksEdge {
  child: string;
  parent: string;
  relation: string;
}

export interface GksDoc {
  table: string;
  nodes: GksNode[];
  edges: GksEdge[];
}

export interface GksSummary {
  name: string;
  revision: number;
  table: string;
  nodes: number;
  edges: number;
  delta?: StructureDelta;
}

export interface StructureDelta {
  merged: [string, string][];
  kept: [string, string][];
  dropped: [string, string][];
  provenance: Record<string, string>;
}

export interface TableSummary {
  name: string;
  objects: number;
  attributes: string[];
}

export interface ErrorBody {
  code: string;
  message: string;
  detail: Record<string, unknown>;
}

export type CombineOp = 'union' | 'intersect' | 'difference';
