/** Application wiring: hash routing, the polling loop, role switching. */

import { ApiCallError, ApiClient } from "./api.js";
import {
  renderAccessDenied,
  renderModels,
  renderNotice,
  renderStatus,
  renderTaskList,
} from "./render.js";
import { canSee, visiblePages, type PageName } from "./roles.js";
import type { Role, Task } from "./types.js";

const POLL_INTERVAL_MS = 1500;

export class App {
  private api: ApiClient;
  private page: PageName = "tasks";
  private knownInstances: string[] = [];
  private timer: number | undefined;

  constructor(
    private readonly root: HTMLElement,
    baseUrl = "",
  ) {
    this.api = new ApiClient(baseUrl, this.storedRole());
  }

  private storedRole(): Role {
    return window.localStorage.getItem("passflow-role") === "admin" ? "admin" : "user";
  }

  start(): void {
    window.addEventListener("hashchange", () => this.route());
    this.route();
    this.timer = window.setInterval(() => void this.refresh(), POLL_INTERVAL_MS);
  }

  stop(): void {
    if (this.timer !== undefined) window.clearInterval(this.timer);
  }

  private route(): void {
    const hash = window.location.hash.replace("#", "") as PageName;
    this.page = (["tasks", "instances", "models"] as PageName[]).includes(hash)
      ? hash
      : "tasks";
    void this.refresh();
  }

  setRole(role: Role): void {
    this.api.role = role;
    window.localStorage.setItem("passflow-role", role);
    void this.refresh();
  }

  async refresh(): Promise<void> {
    const frame = document.createElement("div");
    frame.className = "page";
    frame.append(this.renderNav());
    if (!canSee(this.api.role, this.page)) {
      frame.append(renderAccessDenied(this.page));
      this.swap(frame);
      return;
    }
    try {
      if (this.page === "tasks") {
        frame.append(await this.tasksPage());
      } else if (this.page === "models") {
        frame.append(await this.modelsPage());
      } else {
        frame.append(await this.instancesPage());
      }
    } catch (error) {
      frame.append(renderNotice(String(error), "error"));
    }
    this.swap(frame);
  }

  private swap(frame: HTMLElement): void {
    this.root.replaceChildren(frame);
  }

  private renderNav(): HTMLElement {
    const nav = document.createElement("nav");
    nav.className = "top-nav";
    for (const page of visiblePages(this.api.role)) {
      const link = document.createElement("a");
      link.href = `#${page}`;
      link.textContent = page;
      if (page === this.page) link.className = "active";
      nav.append(link);
    }
    const roles = document.createElement("select");
    roles.className = "role-switch";
    for (const role of ["user", "admin"] as Role[]) {
      const option = document.createElement("option");
      option.value = role;
      option.textContent = role;
      option.selected = role === this.api.role;
      roles.append(option);
    }
    roles.addEventListener("change", () => this.setRole(roles.value as Role));
    nav.append(roles);
    return nav;
  }

  private async tasksPage(): Promise<HTMLElement> {
    const tasks = await this.api.listTasks();
    return renderTaskList(tasks, (task, values, choice) =>
      void this.submitTask(task, values, choice),
    );
  }

  private async submitTask(
    task: Task,
    values: Record<string, unknown>,
    choice: string | null,
  ): Promise<void> {
    try {
      await this.api.completeTask(task.requestId, values, choice);
    } catch (error) {
      if (error instanceof ApiCallError && error.taskAlreadyHandled) {
        this.root.prepend(renderNotice("task already handled", "info"));
      } else {
        this.root.prepend(renderNotice(String(error), "error"));
      }
    }
    await this.refresh();
  }

  private async modelsPage(): Promise<HTMLElement> {
    const wrap = document.createElement("div");
    const picker = document.createElement("input");
    picker.type = "file";
    picker.className = "model-file";
    const upload = document.createElement("button");
    upload.type = "button";
    upload.textContent = "Upload model";
    upload.addEventListener("click", () => void this.upload(picker));
    wrap.append(picker, upload);
    const models = await this.api.listModels();
    wrap.append(
      renderModels(models, (modelId, name) => void this.startInstance(modelId, name)),
    );
    return wrap;
  }

  private async upload(picker: HTMLInputElement): Promise<void> {
    const file = picker.files?.[0];
    if (!file) return;
    const kind = file.name.toLowerCase().endsWith(".owl") ? "owl" : "bpmn";
    try {
      await this.api.uploadModel(file.name, file, kind);
    } catch (error) {
      this.root.prepend(renderNotice(String(error), "error"));
    }
    await this.refresh();
  }

  private async startInstance(modelId: string, name: string): Promise<void> {
    const { instanceId } = await this.api.startInstance(modelId, name);
    this.knownInstances.push(instanceId);
    window.location.hash = "#instances";
  }

  private async instancesPage(): Promise<HTMLElement> {
    const wrap = document.createElement("div");
    if (this.knownInstances.length === 0) {
      wrap.append(renderNotice("No instances started from this session."));
    }
    for (const instanceId of this.knownInstances) {
      const status = await this.api.instanceStatus(instanceId);
      wrap.append(renderStatus(status, (id) => void this.stopInstance(id)));
    }
    return wrap;
  }

  private async stopInstance(instanceId: string): Promise<void> {
    await this.api.stopInstance(instanceId);
    await this.refresh();
  }
}

export function boot(): void {
  const root = document.getElementById("app");
  if (root) new App(root).start();
}
