// End-to-end flow against a real engine process (needs the Python package
// installed: `pip install -e ..`): upload the enriched hiring model as
// admin, start an instance, work the applicant's form, complete the
// company's "Check application" task choosing invite, and observe
// completion on the status page. Also asserts the date field renders as a
// date picker. Runs in the node environment (real fetch, no browser CORS);
// a happy-dom window provides the document for the render assertions.
import { spawn, type ChildProcess } from "node:child_process";
import { readFileSync } from "node:fs";
import { createServer } from "node:net";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { Window } from "happy-dom";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

const domWindow = new Window();
(globalThis as any).document = domWindow.document;

import { ApiCallError, ApiClient } from "../src/api.js";
import { buildFormView, buildSubmission } from "../src/forms.js";
import { renderTaskCard } from "../src/render.js";
import type { Task } from "../src/types.js";

const ROOT = join(dirname(fileURLToPath(import.meta.url)), "..", "..");
const MODEL = join(ROOT, "corpus", "applicant_company_enriched.owl");

let server: ChildProcess;
let base: string;

async function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const probe = createServer();
    probe.listen(0, "127.0.0.1", () => {
      const address = probe.address();
      if (address && typeof address === "object") {
        const port = address.port;
        probe.close(() => resolve(port));
      } else {
        reject(new Error("no port"));
      }
    });
  });
}

async function waitForHealth(url: string, attempts = 100): Promise<void> {
  for (let i = 0; i < attempts; i++) {
    try {
      const response = await fetch(`${url}/health`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 200));
  }
  throw new Error("engine did not come up");
}

async function pollTasks(
  api: ApiClient,
  instanceId: string,
  stateLabel: string,
  attempts = 50,
): Promise<Task> {
  for (let i = 0; i < attempts; i++) {
    const tasks = await api.listTasks(instanceId);
    const match = tasks.find((t) => t.context.stateLabel === stateLabel);
    if (match) return match;
    await new Promise((r) => setTimeout(r, 100));
  }
  throw new Error(`task '${stateLabel}' never appeared`);
}

beforeAll(async () => {
  const port = await freePort();
  base = `http://127.0.0.1:${port}`;
  server = spawn("python3", ["-m", "passflow.cli", "serve", "--port", String(port)], {
    cwd: ROOT,
    stdio: ["ignore", "pipe", "pipe"],
  });
  await waitForHealth(base);
}, 30_000);

afterAll(() => {
  server?.kill("SIGTERM");
});

describe("end-to-end task flow", () => {
  it("runs the hiring process from upload to completion", async () => {
    const admin = new ApiClient(base, "admin");
    const user = new ApiClient(base, "user");

    // Role gate: a plain user cannot upload models.
    const denied = await user
      .uploadModel("applicant_company_enriched.owl", readFileSync(MODEL).toString(), "owl")
      .catch((e) => e);
    expect(denied).toBeInstanceOf(ApiCallError);
    expect(denied.status).toBe(403);

    const record = await admin.uploadModel(
      "applicant_company_enriched.owl",
      readFileSync(MODEL).toString(),
      "owl",
    );
    expect(record.subjects.sort()).toEqual(["applicant", "company"]);

    const { instanceId } = await user.startInstance(record.modelId, "e2e-run");

    // The applicant's form comes first: fill it in and submit.
    const writeTask = await pollTasks(user, instanceId, "Write application");
    const writeCard = renderTaskCard(writeTask, () => {});
    const dateInput = writeCard.querySelector<HTMLInputElement>(
      "input[name=availableFrom]",
    );
    expect(dateInput?.type).toBe("date"); // date fields render a date picker
    const submission = buildSubmission(
      writeTask.formSpec,
      { applicantName: "Jo", availableFrom: "2026-09-01", yearsOfExperience: "4" },
      null,
    );
    await user.completeTask(writeTask.requestId, submission.values, submission.choice);

    // The company checks the application; the received data is visible and
    // the decision is a choice between invite and reject.
    const checkTask = await pollTasks(user, instanceId, "Check application");
    expect(checkTask.context.subjectLabel).toBe("Company");
    const view = buildFormView(checkTask.formSpec);
    expect(view.choices).toEqual(["invite", "reject"]);
    const dateField = view.fields.find((f) => f.name === "availableFrom");
    expect(dateField?.widget).toBe("date");
    expect(dateField?.initial).toBe("2026-09-01"); // payload flowed across
    const decision = buildSubmission(
      checkTask.formSpec,
      { applicantName: "Jo", availableFrom: "2026-09-01", yearsOfExperience: "4" },
      "invite",
    );
    await user.completeTask(checkTask.requestId, decision.values, decision.choice);

    // Completing the same task again surfaces "already handled".
    const again = await user
      .completeTask(checkTask.requestId, decision.values, decision.choice)
      .catch((e) => e);
    expect(again).toBeInstanceOf(ApiCallError);
    expect(again.taskAlreadyHandled).toBe(true);

    // The status page shows the completed instance.
    let completed = false;
    for (let i = 0; i < 50 && !completed; i++) {
      const status = await user.instanceStatus(instanceId);
      completed = status.completed;
      if (!completed) await new Promise((r) => setTimeout(r, 100));
    }
    const status = await user.instanceStatus(instanceId);
    expect(status.completed).toBe(true);
    const subjects = new Map(status.subjects.map((s) => [s.subject, s]));
    expect(subjects.get("Applicant")?.currentStateLabel).toBe("Invited");
    expect(subjects.get("Applicant")?.alive).toBe(false);
  }, 30_000);
});
