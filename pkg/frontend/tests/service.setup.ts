// Boots the real gks HTTP service for the explorer tests; the UI is
// exercised against live endpoints, not mocks.

import { spawn, type ChildProcess } from 'node:child_process';

export const BASE = 'http://127.0.0.1:8899';

let proc: ChildProcess | null = null;

async function waitForService(timeoutMs: number): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  let lastError: unknown = null;
  while (Date.now() < deadline) {
    try {
      const resp = await fetch(`${BASE}/tables`);
      if (resp.ok) return;
    } catch (err) {
      lastError = err;
    }
    await new Promise((r) => setTimeout(r, 250));
  }
  throw new Error(`gks service did not come up on ${BASE}: ${lastError}`);
}

export async function setup(): Promise<void> {
  proc = spawn('python3', ['-m', 'gks.cli', 'serve', '--bind', '127.0.0.1:8899'], {
    stdio: 'ignore',
  });
  proc.on('error', (err) => {
    throw new Error(`failed to spawn gks service: ${err}`);
  });
  await waitForService(30000);
}

export async function teardown(): Promise<void> {
  if (proc && !proc.killed) {
    proc.kill('SIGTERM');
  }
}
