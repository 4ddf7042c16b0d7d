/** The static two-role scheme: admins manage models, users work tasks. */

import type { Role } from "./types.js";

export type PageName = "tasks" | "instances" | "models";

const ADMIN_ONLY: ReadonlySet<PageName> = new Set(["models"]);

export function canSee(role: Role, page: PageName): boolean {
  return role === "admin" || !ADMIN_ONLY.has(page);
}

export function visiblePages(role: Role): PageName[] {
  const pages: PageName[] = ["tasks", "instances", "models"];
  return pages.filter((page) => canSee(role, page));
}
