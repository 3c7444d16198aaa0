/**
 * Headless annotator driving the same task endpoints as the console.
 * Used by the end-to-end check (resolving a whole selection batch while
 * an AL run waits in human mode) and handy for smoke-testing a service.
 */

import { ApiClient, ApiError, TaskView } from './api.js';

export type LabelRule = (task: TaskView) => string;

/** Deterministic default: pick a label from a hash of the text. */
export const hashLabelRule: LabelRule = (task) => {
  let h = 0;
  for (const ch of task.text) h = (h * 31 + ch.codePointAt(0)!) >>> 0;
  return task.label_set[h % task.label_set.length]!;
};

export interface ResolveOptions {
  rule?: LabelRule;
  /** Stop after this many resolved tasks (0 = unlimited). */
  maxTasks?: number;
  /** Stop after this many consecutive empty polls. */
  idleRounds?: number;
  pollDelayMs?: number;
  sleep?: (ms: number) => Promise<void>;
}

export interface ResolveSummary {
  resolved: number;
  raced: number;
  byLabel: Record<string, number>;
}

const defaultSleep = (ms: number) =>
  new Promise<void>((resolve) => setTimeout(resolve, ms));

export async function resolveTasks(
  client: ApiClient,
  options: ResolveOptions = {},
): Promise<ResolveSummary> {
  const {
    rule = hashLabelRule,
    maxTasks = 0,
    idleRounds = 3,
    pollDelayMs = 250,
    sleep = defaultSleep,
  } = options;

  const summary: ResolveSummary = { resolved: 0, raced: 0, byLabel: {} };
  let idle = 0;
  while (idle < idleRounds) {
    if (maxTasks > 0 && summary.resolved >= maxTasks) break;
    const tasks = await client.getTasks();
    if (tasks.length === 0) {
      idle += 1;
      await sleep(pollDelayMs);
      continue;
    }
    idle = 0;
    for (const task of tasks) {
      if (maxTasks > 0 && summary.resolved >= maxTasks) break;
      const label = rule(task);
      try {
        await client.submitLabel(task.task_id, label);
        summary.resolved += 1;
        summary.byLabel[label] = (summary.byLabel[label] ?? 0) + 1;
      } catch (error) {
        if (error instanceof ApiError && error.status === 404) {
          summary.raced += 1; // someone else got it first
        } else {
          throw error;
        }
      }
    }
  }
  return summary;
}
